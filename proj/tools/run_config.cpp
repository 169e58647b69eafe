#include "run_config.hpp"

#include "diraclab/errors.hpp"

#include <fstream>
#include <sstream>

namespace diraclab::cli {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string &text) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used == t.size())
      return v;
  } catch (const std::logic_error &) {
  }
  throw ParseError("not a number: '" + text + "'");
}

int parse_int(const std::string &text) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    const int v = std::stoi(t, &used);
    if (used == t.size())
      return v;
  } catch (const std::logic_error &) {
  }
  throw ParseError("not an integer: '" + text + "'");
}

bool parse_bool(const std::string &text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes")
    return true;
  if (t == "false" || t == "0" || t == "no")
    return false;
  throw ParseError("not a boolean: '" + text + "'");
}

std::vector<std::string> split(const std::string &text, char sep) {
  std::vector<std::string> parts;
  std::istringstream is(text);
  std::string p;
  while (std::getline(is, p, sep))
    parts.push_back(trim(p));
  return parts;
}

} // namespace

std::vector<double> parse_double_list(const std::string &text) {
  std::vector<double> out;
  for (const auto &p : split(text, ','))
    out.push_back(parse_double(p));
  if (out.empty())
    throw ParseError("empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string &text) {
  std::vector<int> out;
  for (const auto &p : split(text, ','))
    out.push_back(parse_int(p));
  if (out.empty())
    throw ParseError("empty list");
  return out;
}

cplx parse_complex(const std::string &text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2)
    throw ParseError("expected 're,im', got '" + text + "'");
  return {parse_double(parts[0]), parse_double(parts[1])};
}

Sign parse_sign(const std::string &text) {
  const std::string t = trim(text);
  if (t == "+" || t == "plus")
    return Sign::plus;
  if (t == "-" || t == "minus")
    return Sign::minus;
  throw ParseError("sign must be + or -, got '" + text + "'");
}

void RunConfig::set(const std::string &key, const std::string &value) {
  if (key == "grid.n")
    grid_n = parse_int(value);
  else if (key == "grid.box_l")
    box_l = parse_double(value);
  else if (key == "weight.s")
    s = parse_double(value);
  else if (key == "sweep.kind")
    kind = trim(value);
  else if (key == "sweep.lambda")
    lambdas = parse_double_list(value);
  else if (key == "sweep.mu")
    mus = parse_double_list(value);
  else if (key == "sweep.proxy")
    proxy = parse_bool(value);
  else if (key == "band.k")
    band_k = parse_double(value);
  else if (key == "counterexample.n")
    n_list = parse_int_list(value);
  else if (key == "run.sign")
    sign = parse_sign(value);
  else if (key == "run.z")
    z = parse_complex(value);
  else if (key == "run.seed")
    seed = std::uint64_t(parse_int(value));
  else if (key == "run.out")
    out = trim(value);
  else if (key == "run.tol")
    tol = parse_double(value);
  else if (key == "potential.kind")
    potential = trim(value);
  else if (key == "potential.epsilon")
    epsilon = parse_double(value);
  else if (key == "potential.amplitude")
    amplitude = parse_double(value);
  else if (key == "potential.theta")
    theta = parse_double(value);
  else if (key == "potential.t")
    t = parse_double(value);
  else if (key == "potential.c_star")
    c_star = parse_double(value);
  else
    throw ParseError("unknown config key '" + key + "'");
}

void RunConfig::validate() const {
  auto fail = [](const std::string &m) { throw ParseError("config: " + m); };
  if (grid_n < 2 || grid_n % 2 != 0)
    fail("grid.n must be a positive even integer");
  if (!(box_l > 0.0))
    fail("grid.box_l must be positive");
  if (kind != "dirac" && kind != "schrodinger" && kind != "perturbed")
    fail("sweep.kind must be dirac, schrodinger or perturbed");
  for (double l : lambdas)
    if (std::abs(l) < 2.0)
      fail("every sweep.lambda needs |lambda| >= 2");
  for (double m : mus)
    if (!(m > 0.0 && m < 1.0))
      fail("every sweep.mu must lie in (0, 1)");
  if (!(band_k > 1.0))
    fail("band.k must exceed 1");
  for (int n : n_list)
    if (n < 1)
      fail("counterexample.n entries must be >= 1");
  if (!(tol > 0.0))
    fail("run.tol must be positive");
  if (potential != "scalar" && potential != "beta" && potential != "offdiag")
    fail("potential.kind must be scalar, beta or offdiag");
  if (!(epsilon > 0.0))
    fail("potential.epsilon must be positive");
  if (!(theta > 0.0 && theta < 1.0))
    fail("potential.theta must lie in (0, 1)");
  if (c_star && !(*c_star >= 0.0))
    fail("potential.c_star must be nonnegative");
}

void load_config(std::istream &is, RunConfig &cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
    try {
      cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ParseError &e) {
      throw ParseError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void load_config(const std::string &path, RunConfig &cfg) {
  std::ifstream is(path);
  if (!is)
    throw ParseError("cannot open config file " + path);
  load_config(is, cfg);
}

} // namespace diraclab::cli
