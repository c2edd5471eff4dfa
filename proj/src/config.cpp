#include "pqw/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace pqw {

namespace pt = boost::property_tree;

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t') {
      out.push_back(c);
    }
  }
  return out;
}

double parse_number(std::string_view s, std::string_view whole) {
  double v = 0.0;
  const auto *end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("bad number '" + std::string(whole) + "'");
  }
  return v;
}

std::string fmt17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    if (!strip(cur).empty()) {
      out.push_back(strip(cur));
    }
  }
  return out;
}

CoinJet read_coin(const pt::ptree &tree, const std::string &section) {
  CoinJet j;
  const pt::ptree empty;
  const auto found = tree.get_child_optional(section);
  const pt::ptree &s = found ? *found : empty;
  auto angle = [&s](const char *key) { return parse_angle(s.get<std::string>(key, "0")); };
  j.delta = angle("delta");
  j.zeta0 = angle("zeta0");
  j.zeta1 = angle("zeta1");
  j.theta0 = angle("theta0");
  j.theta1 = angle("theta1");
  j.phi0 = angle("phi0");
  j.phi1 = angle("phi1");
  return j;
}

template <typename T> T get_num(const pt::ptree &tree, const std::string &key, T fallback) {
  const auto v = tree.get_optional<std::string>(key);
  if (!v) {
    return fallback;
  }
  std::istringstream is(*v);
  T out{};
  if (!(is >> out) || !(is >> std::ws).eof()) {
    throw std::invalid_argument("bad value for " + key + ": '" + *v + "'");
  }
  return out;
}

} // namespace

double parse_angle(std::string_view text) {
  const std::string s = strip(text);
  const auto pos = s.find("pi");
  if (pos == std::string::npos) {
    return parse_number(s, text);
  }
  std::string pre = s.substr(0, pos);
  const std::string post = s.substr(pos + 2);
  if (!pre.empty() && pre.back() == '*') {
    pre.pop_back();
  }
  double coef = 1.0;
  if (pre == "-") {
    coef = -1.0;
  } else if (pre == "+" || pre.empty()) {
    coef = 1.0;
  } else {
    coef = parse_number(pre.front() == '+' ? std::string_view(pre).substr(1) : std::string_view(pre), text);
  }
  double den = 1.0;
  if (!post.empty()) {
    if (post.front() != '/') {
      throw std::invalid_argument("bad angle '" + std::string(text) + "'");
    }
    den = parse_number(std::string_view(post).substr(1), text);
    if (den == 0.0) {
      throw std::invalid_argument("zero denominator in angle '" + std::string(text) + "'");
    }
  }
  return coef * std::numbers::pi / den;
}

void finalize(ExperimentConfig &cfg) {
  if (cfg.family == Family::time && cfg.b_exp != RationalExp{1}) {
    throw std::invalid_argument("time family needs b = 1");
  }
  for (CoinJet *j : {&cfg.walk.coin_x, &cfg.walk.coin_y}) {
    if (cfg.family == Family::plastic) {
      j->mode = JetMode::plastic;
      j->b_exp = cfg.b_exp;
    } else {
      j->mode = JetMode::time;
      j->b_exp = RationalExp{1};
    }
  }
  cfg.walk.validate();
  if (cfg.family == Family::plastic && cfg.walk.a_exp.is_zero()) {
    throw std::invalid_argument("plastic family needs a > 0");
  }
  if (cfg.nx < 2 || cfg.ny < 2 || cfg.grid < 1 || cfg.steps < 0 || cfg.dispersion_power < 1) {
    throw std::invalid_argument("lattice and grid sizes out of range");
  }
  if (cfg.format != "csv" && cfg.format != "json") {
    throw std::invalid_argument("output format must be csv or json");
  }
  if (cfg.initial != "gaussian" && cfg.initial != "delta" && cfg.initial != "random") {
    throw std::invalid_argument("initial must be gaussian, delta or random");
  }
}

ExperimentConfig parse_config(std::istream &in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error &e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    const std::string family = tree.get<std::string>("walk.family", "time");
    if (family == "time") {
      cfg.family = Family::time;
    } else if (family == "plastic") {
      cfg.family = Family::plastic;
    } else {
      throw std::invalid_argument("walk.family must be time or plastic");
    }
    cfg.walk.tau = get_num<int>(tree, "walk.tau", 2);
    cfg.walk.a_exp = RationalExp::parse(tree.get<std::string>("walk.a", cfg.family == Family::plastic ? "1/2" : "0"));
    cfg.b_exp = RationalExp::parse(tree.get<std::string>("walk.b", cfg.family == Family::plastic ? "1/2" : "1"));
    cfg.walk.delta_spatial = get_num<double>(tree, "walk.delta_spatial", 1.0);
    cfg.walk.coin_x = read_coin(tree, "coin_x");
    cfg.walk.coin_y = read_coin(tree, "coin_y");

    cfg.nx = get_num<int>(tree, "lattice.nx", 32);
    cfg.ny = get_num<int>(tree, "lattice.ny", 32);
    cfg.steps = get_num<long long>(tree, "lattice.steps", 100);
    cfg.initial = tree.get<std::string>("lattice.initial", "gaussian");

    cfg.T = get_num<double>(tree, "run.T", 1.0);
    cfg.grid = get_num<int>(tree, "run.grid", 32);
    cfg.eps = get_num<double>(tree, "run.eps", 0.01);
    cfg.dispersion_power = get_num<int>(tree, "run.dispersion_power", 1);
    cfg.seed = get_num<std::uint64_t>(tree, "run.seed", 0);
    if (const auto e = tree.get_optional<std::string>("run.eps_list")) {
      for (const auto &tok : split(*e, ',')) {
        cfg.eps_list.push_back(parse_number(tok, *e));
      }
    }
    if (const auto mlist = tree.get_optional<std::string>("run.momenta")) {
      for (const auto &pair : split(*mlist, ';')) {
        const auto xy = split(pair, ',');
        if (xy.size() != 2) {
          throw std::invalid_argument("run.momenta entries are 'kx,ky' separated by ';'");
        }
        cfg.momenta.push_back({parse_angle(xy[0]), parse_angle(xy[1])});
      }
    }

    cfg.format = tree.get<std::string>("output.format", "json");
    cfg.path = tree.get<std::string>("output.path", "");
  } catch (const pt::ptree_error &e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  finalize(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config '" + path + "'");
  }
  return parse_config(in);
}

std::string emit_config(const ExperimentConfig &cfg) {
  std::ostringstream os;
  const WalkConfig &w = cfg.walk;
  os << "[walk]\n"
     << "family = " << (cfg.family == Family::time ? "time" : "plastic") << '\n'
     << "tau = " << w.tau << '\n'
     << "a = " << w.a_exp.str() << '\n'
     << "b = " << cfg.b_exp.str() << '\n'
     << "delta_spatial = " << fmt17(w.delta_spatial) << '\n';
  for (const auto &[name, j] : {std::pair{"coin_x", &w.coin_x}, std::pair{"coin_y", &w.coin_y}}) {
    os << "\n[" << name << "]\n"
       << "delta = " << fmt17(j->delta) << '\n'
       << "zeta0 = " << fmt17(j->zeta0) << '\n'
       << "zeta1 = " << fmt17(j->zeta1) << '\n'
       << "theta0 = " << fmt17(j->theta0) << '\n'
       << "theta1 = " << fmt17(j->theta1) << '\n'
       << "phi0 = " << fmt17(j->phi0) << '\n'
       << "phi1 = " << fmt17(j->phi1) << '\n';
  }
  os << "\n[lattice]\n"
     << "nx = " << cfg.nx << '\n'
     << "ny = " << cfg.ny << '\n'
     << "steps = " << cfg.steps << '\n'
     << "initial = " << cfg.initial << '\n';
  os << "\n[run]\n"
     << "T = " << fmt17(cfg.T) << '\n'
     << "grid = " << cfg.grid << '\n'
     << "eps = " << fmt17(cfg.eps) << '\n'
     << "dispersion_power = " << cfg.dispersion_power << '\n'
     << "seed = " << cfg.seed << '\n';
  if (!cfg.eps_list.empty()) {
    os << "eps_list = ";
    for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
      os << (i ? ", " : "") << fmt17(cfg.eps_list[i]);
    }
    os << '\n';
  }
  if (!cfg.momenta.empty()) {
    os << "momenta = ";
    for (std::size_t i = 0; i < cfg.momenta.size(); ++i) {
      os << (i ? "; " : "") << fmt17(cfg.momenta[i][0]) << ", " << fmt17(cfg.momenta[i][1]);
    }
    os << '\n';
  }
  os << "\n[output]\n"
     << "format = " << cfg.format << '\n';
  if (!cfg.path.empty()) {
    os << "path = " << cfg.path << '\n';
  }
  return os.str();
}

} // namespace pqw
