// qwalk: command-line front end over the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qwalk/qwalk.h"

namespace {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitNonUnique = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitDegreeOverflow = 5;

struct Failure : std::runtime_error {
  int exit_code;
  Failure(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
};

int exit_code_for(qw_status s) {
  switch (s) {
    case QW_OK: return kExitOk;
    case QW_INVALID_ARGUMENT:
    case QW_PARSE_ERROR:
    case QW_INVALID_CHANNEL: return kExitMalformed;
    case QW_NON_UNIQUE_FIXED_POINT: return kExitNonUnique;
    case QW_DEGENERATE: return kExitDegenerate;
    case QW_DEGREE_OVERFLOW: return kExitDegreeOverflow;
    default: return kExitInternal;
  }
}

void check(qw_status s) {
  if (s != QW_OK) {
    throw Failure(exit_code_for(s), std::string(qw_status_string(s)) + ": " + qw_last_error());
  }
}

[[noreturn]] void malformed(const std::string& msg) { throw Failure(kExitMalformed, msg); }

struct ChannelDeleter {
  void operator()(qw_channel* c) const { qw_channel_free(c); }
};
struct WalkDeleter {
  void operator()(qw_walk* w) const { qw_walk_free(w); }
};
struct LatticeDeleter {
  void operator()(qw_lattice* l) const { qw_lattice_free(l); }
};
using ChannelPtr = std::unique_ptr<qw_channel, ChannelDeleter>;
using WalkPtr = std::unique_ptr<qw_walk, WalkDeleter>;
using LatticePtr = std::unique_ptr<qw_lattice, LatticeDeleter>;

// ---- output tables

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    // JSON has no infinities; keep them readable as strings.
    if (!std::isfinite(*d)) return format_double(*d);
    return *d;
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

std::string render(const Table& t, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : t.rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[t.header[i]] = cell_json(row[i]);
      arr.push_back(obj);
    }
    out << arr.dump(2) << '\n';
    return out.str();
  }
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    out << (i ? "," : "") << csv_field(t.header[i]);
  }
  out << "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(cell_text(row[i]));
    out << "\r\n";
  }
  return out.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) malformed("cannot open output file " + path);
  f << text;
}

// ---- argument parsing

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    malformed("not a number: \"" + s + "\"");
  }
  if (used != s.size()) malformed("not a number: \"" + s + "\"");
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::array<double, 3> parse_vec3(const std::string& s, const char* what) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) malformed(std::string(what) + " needs three comma-separated numbers");
  return {parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
}

// "a,b,c" or "start:stop:step"; must be nonempty and strictly increasing.
std::vector<double> parse_grid(const std::string& s, const char* what) {
  std::vector<double> grid;
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) malformed(std::string(what) + " range must be start:stop:step");
    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    const double step = parse_number(parts[2]);
    if (!(step > 0.0) || !(stop >= start)) {
      malformed(std::string(what) + " range needs step > 0 and stop >= start");
    }
    const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 10'000'000) malformed(std::string(what) + " has too many points");
    for (long long i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  } else {
    for (const auto& p : split(s, ',')) grid.push_back(parse_number(p));
  }
  if (grid.empty()) malformed(std::string(what) + " is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) malformed(std::string(what) + " must be strictly increasing");
  }
  return grid;
}

struct ParsedLetter {
  char axis;
  double t0;
  double t1;
};

// Letters X|Y|Z, each optionally followed by "@t0:t1"; default window (0, t].
std::vector<ParsedLetter> parse_word(const std::string& s, double t) {
  std::vector<ParsedLetter> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c != 'X' && c != 'Y' && c != 'Z') malformed("word letters must be X, Y or Z: " + s);
    ParsedLetter letter{c, 0.0, t};
    ++i;
    if (i < s.size() && s[i] == '@') {
      const std::size_t end = s.find_first_of("XYZ", i + 1);
      const std::string window = s.substr(i + 1, end == std::string::npos ? end : end - i - 1);
      const auto parts = split(window, ':');
      if (parts.size() != 2) malformed("letter window must be t0:t1 in " + s);
      letter.t0 = parse_number(parts[0]);
      letter.t1 = parse_number(parts[1]);
      i = end == std::string::npos ? s.size() : end;
    }
    out.push_back(letter);
  }
  if (out.empty()) malformed("empty word");
  return out;
}

std::string read_channel_text(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  std::ifstream f(arg, std::ios::binary);
  if (!f) malformed("cannot read channel file " + arg);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

struct Options {
  std::string channel;
  std::string nu;
  std::vector<std::size_t> n;
  std::optional<double> t;
  std::string t_grid;
  std::string x_grid;
  std::vector<std::string> words;
  std::string initial;
  std::string out;
  std::string format = "csv";
};

ChannelPtr load_channel(const Options& o) {
  qw_channel* raw = nullptr;
  check(qw_channel_parse(read_channel_text(o.channel).c_str(), &raw));
  return ChannelPtr(raw);
}

std::optional<qw_state> initial_state(const Options& o) {
  if (o.initial.empty()) return std::nullopt;
  const auto r = parse_vec3(o.initial, "--initial-state");
  return qw_state{0.5 * (1.0 + r[2]), 0.5 * r[0], -0.5 * r[1]};
}

std::array<double, 3> require_nu(const Options& o) {
  if (o.nu.empty()) malformed("--nu is required");
  return parse_vec3(o.nu, "--nu");
}

std::vector<std::size_t> require_n(const Options& o) {
  if (o.n.empty()) malformed("--n is required");
  for (auto n : o.n)
    if (n < 1) malformed("--n must be >= 1");
  return o.n;
}

std::size_t single_n(const Options& o) {
  const auto n = require_n(o);
  if (n.size() != 1) malformed("this command takes a single --n");
  return n[0];
}

WalkPtr make_walk(const qw_channel* ch, const Options& o, std::size_t n) {
  const auto init = initial_state(o);
  qw_walk* raw = nullptr;
  check(qw_walk_new(ch, init ? &*init : nullptr, n, &raw));
  return WalkPtr(raw);
}

qw_analysis channel_analysis(const qw_channel* ch, const Options& o) {
  const auto init = initial_state(o);
  qw_analysis an{};
  check(qw_channel_analyze(ch, init ? &*init : nullptr, &an));
  return an;
}

const char* assumption_name(qw_assumption a) {
  switch (a) {
    case QW_ASSUMPTION_HOLDS: return "holds_geometric";
    case QW_ASSUMPTION_FAILS_SPECTRAL_RADIUS_ONE: return "fails_spectral_radius_one";
    case QW_ASSUMPTION_NON_UNIQUE: return "non_unique_fixed_point";
  }
  return "unknown";
}

// ---- commands

std::string cmd_show(const Options& o) {
  auto ch = load_channel(o);
  if (o.format == "json") {
    char* text = nullptr;
    check(qw_channel_to_json(ch.get(), &text));
    std::string out = std::string(text) + "\n";
    qw_string_free(text);
    return out;
  }
  double linear[9], translation[3];
  check(qw_channel_affine(ch.get(), linear, translation));
  Table t{{"row", "T1", "T2", "T3", "t"}, {}};
  for (int i = 0; i < 3; ++i) {
    t.rows.push_back({static_cast<long long>(i + 1), linear[3 * i], linear[3 * i + 1],
                      linear[3 * i + 2], translation[i]});
  }
  return render(t, o.format);
}

std::string cmd_check_cp(const Options& o) {
  auto ch = load_channel(o);
  double eig[4];
  check(qw_channel_choi_eigenvalues(ch.get(), eig));
  int cp = 0;
  check(qw_channel_is_cp(ch.get(), 1e-10, &cp));
  Table t{{"quantity", "value"}, {}};
  for (int i = 0; i < 4; ++i) t.rows.push_back({"choi_eigenvalue_" + std::to_string(i + 1), eig[i]});
  t.rows.push_back({std::string("choi_cp"), cp != 0});
  int form = 0;
  check(qw_channel_form(ch.get(), &form));
  if (form == 2) {
    qw_krsw_conditions c{};
    check(qw_channel_krsw_conditions(ch.get(), &c));
    t.rows.push_back({std::string("krsw_applicable"), c.applicable != 0});
    t.rows.push_back({std::string("krsw_condition_1"), c.cond1 != 0});
    t.rows.push_back({std::string("krsw_condition_2"), c.cond2 != 0});
    t.rows.push_back({std::string("krsw_condition_3"), c.cond3 != 0});
    t.rows.push_back({std::string("krsw_cp"), c.completely_positive != 0});
  }
  return render(t, o.format);
}

std::string cmd_fixpoint(const Options& o) {
  auto ch = load_channel(o);
  const qw_analysis an = channel_analysis(ch.get(), o);
  Table t{{"quantity", "value"}, {}};
  t.rows.push_back({std::string("unique"), an.fixed_point_unique != 0});
  t.rows.push_back({std::string("v1"), an.v[0]});
  t.rows.push_back({std::string("v2"), an.v[1]});
  t.rows.push_back({std::string("v3"), an.v[2]});
  t.rows.push_back({std::string("rho_alpha"), an.rho_inf.alpha});
  t.rows.push_back({std::string("rho_beta_re"), an.rho_inf.beta_re});
  t.rows.push_back({std::string("rho_beta_im"), an.rho_inf.beta_im});
  return render(t, o.format);
}

std::string cmd_analyze(const Options& o) {
  auto ch = load_channel(o);
  const qw_analysis an = channel_analysis(ch.get(), o);
  Table t{{"quantity", "value"}, {}};
  for (int i = 0; i < 3; ++i) t.rows.push_back({"v" + std::to_string(i + 1), an.v[i]});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t.rows.push_back({"C" + std::to_string(i + 1) + std::to_string(j + 1),
                        an.covariance[3 * i + j]});
  t.rows.push_back({std::string("spectral_radius"), an.spectral_radius});
  t.rows.push_back({std::string("assumption_a"), std::string(assumption_name(an.assumption))});
  t.rows.push_back({std::string("fixed_point_unique"), an.fixed_point_unique != 0});
  return render(t, o.format);
}

std::string cmd_dist(const Options& o) {
  auto ch = load_channel(o);
  const auto nu = require_nu(o);
  auto walk = make_walk(ch.get(), o, single_n(o));
  qw_lattice* raw = nullptr;
  check(qw_walk_distribution(walk.get(), nu.data(), 0.0, 0.0, o.t.value_or(1.0), &raw));
  LatticePtr lattice(raw);
  Table t{{"value", "probability"}, {}};
  for (std::size_t i = 0; i < qw_lattice_size(lattice.get()); ++i) {
    t.rows.push_back({qw_lattice_value(lattice.get(), i), qw_lattice_weight(lattice.get(), i)});
  }
  return render(t, o.format);
}

std::string cmd_clt(const Options& o) {
  auto ch = load_channel(o);
  const auto nu = require_nu(o);
  Table t{{"n", "ks_distance", "target_variance"}, {}};
  for (std::size_t n : require_n(o)) {
    auto walk = make_walk(ch.get(), o, n);
    double ks = 0.0, var = 0.0;
    check(qw_walk_clt(walk.get(), nu.data(), o.t.value_or(1.0), &ks, &var));
    t.rows.push_back({static_cast<long long>(n), ks, var});
  }
  return render(t, o.format);
}

std::string cmd_ldp(const Options& o) {
  auto ch = load_channel(o);
  const auto nu = require_nu(o);
  if (o.x_grid.empty()) malformed("--x-grid is required");
  const auto xs = parse_grid(o.x_grid, "--x-grid");
  auto walk = make_walk(ch.get(), o, single_n(o));
  Table t{{"x", "empirical_rate", "limit_rate"}, {}};
  for (double x : xs) {
    double emp = 0.0, lim = 0.0;
    check(qw_walk_ldp(walk.get(), nu.data(), x, &emp, &lim));
    t.rows.push_back({x, emp, lim});
  }
  return render(t, o.format);
}

std::string cmd_lambda(const Options& o) {
  auto ch = load_channel(o);
  const auto nu = require_nu(o);
  if (o.t_grid.empty()) malformed("--t-grid is required");
  const auto ts = parse_grid(o.t_grid, "--t-grid");
  auto walk = make_walk(ch.get(), o, single_n(o));
  qw_analysis an{};
  check(qw_walk_analysis(walk.get(), &an));
  Table t{{"t", "lambda_n", "lambda_limit"}, {}};
  for (double x : ts) {
    double ln = 0.0, lim = 0.0;
    check(qw_walk_lambda_n(walk.get(), nu.data(), x, &ln));
    check(qw_lambda_limit(nu.data(), an.v, x, &lim));
    t.rows.push_back({x, ln, lim});
  }
  return render(t, o.format);
}

std::string cmd_moments(const Options& o) {
  auto ch = load_channel(o);
  if (o.words.empty()) malformed("--word is required");
  const double horizon = o.t.value_or(1.0);
  Table t{{"word", "n", "re", "im", "limit_re", "limit_im"}, {}};
  for (const auto& text : o.words) {
    const auto parsed = parse_word(text, horizon);
    for (std::size_t n : require_n(o)) {
      auto walk = make_walk(ch.get(), o, n);
      qw_analysis an{};
      check(qw_walk_analysis(walk.get(), &an));
      // Letters are centered at the stationary vector.
      std::vector<qw_letter> letters;
      for (const auto& p : parsed) {
        qw_letter l{};
        const int axis = p.axis - 'X';
        l.nu[axis] = 1.0;
        l.center = an.v[axis];
        l.t0 = p.t0;
        l.t1 = p.t1;
        letters.push_back(l);
      }
      double re = 0.0, im = 0.0, lre = 0.0, lim = 0.0;
      check(qw_walk_word_expectation(walk.get(), letters.data(), letters.size(), &re, &im));
      check(qw_quasi_free_word_moment(an.v, letters.data(), letters.size(), &lre, &lim));
      t.rows.push_back({text, static_cast<long long>(n), re, im, lre, lim});

      double sym = 0.0, sym_limit = 0.0;
      check(qw_walk_symmetrized(walk.get(), letters.data(), letters.size(), &sym));
      check(qw_gaussian_word_moment(an.covariance, letters.data(), letters.size(), &sym_limit));
      t.rows.push_back({"sym(" + text + ")", static_cast<long long>(n), sym, 0.0, sym_limit, 0.0});
    }
  }
  return render(t, o.format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit channels and exact quantum walk statistics"};
  app.require_subcommand(1);

  Options opts;
  struct Command {
    const char* name;
    const char* help;
    std::string (*run)(const Options&);
    bool walk_flags;
  };
  const std::vector<Command> commands{
      {"show", "Affine form, or the channel spec with --format json", cmd_show, false},
      {"check-cp", "Choi eigenvalues and KRSW conditions", cmd_check_cp, false},
      {"fixpoint", "Stationary state", cmd_fixpoint, false},
      {"analyze", "Stationary vector, covariance, spectral radius", cmd_analyze, false},
      {"dist", "Exact law of the collective spin in direction nu", cmd_dist, true},
      {"clt", "Kolmogorov distance to the Gaussian limit", cmd_clt, true},
      {"ldp", "Exact tail rates against the rate function", cmd_ldp, true},
      {"lambda", "Finite-n and limit cumulant generating functions", cmd_lambda, true},
      {"moments", "Word expectations and their Gaussian limits", cmd_moments, true},
  };

  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--channel", opts.channel, "Channel spec file or inline JSON")->required();
    sub->add_option("--initial-state", opts.initial, "Initial Bloch vector x,y,z");
    sub->add_option("--out", opts.out, "Output file (default stdout)");
    sub->add_option("--format", opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    if (c.walk_flags) {
      sub->add_option("--nu", opts.nu, "Direction a,b,c");
      sub->add_option("--n", opts.n, "Site counts")->delimiter(',');
      sub->add_option("--t", opts.t, "Time horizon (default 1)");
      sub->add_option("--t-grid", opts.t_grid, "t values: list or start:stop:step");
      sub->add_option("--x-grid", opts.x_grid, "x values: list or start:stop:step");
      sub->add_option("--word", opts.words, "Words such as XY or X@0:0.5Y@0.5:1")->delimiter(',');
    }
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitMalformed;
  }

  try {
    for (const auto& [sub, cmd] : subs) {
      if (sub->parsed()) {
        emit(cmd->run(opts), opts.out);
        return kExitOk;
      }
    }
  } catch (const Failure& f) {
    std::cerr << "qwalk: " << f.what() << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "qwalk: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
