#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ontca/cogwheel.hpp"
#include "ontca/dirac.hpp"
#include "ontca/error.hpp"
#include "ontca/hilbert.hpp"
#include "ontca/kinematics.hpp"
#include "ontca/render.hpp"
#include "ontca/spin_chain.hpp"

namespace ontca::cli {

namespace {

namespace fs = std::filesystem;

constexpr double kRoundTripTolerance = 1e-9;

struct Options {
  std::string out;
  std::string render = "ascii";
  std::string init;

  std::size_t n = 1;
  double t = 1.0;
  double d = 1.0;

  int s = 2;
  std::size_t steps = 8;
  std::size_t cycles = 3;
  int k0 = 1;
  int l0 = 0;
  std::string mode = "A";
  std::string schedule;

  std::vector<double> eps{0.0, 1e-3, 1e-2, 1e-1};
  int site_i = 1;
  int site_j = 2;

  std::int64_t m = 1;
  std::int64_t mu = 1;
  bool table = false;
  bool exhaustive_only = false;
};

class Output {
public:
  explicit Output(const std::string &dir) {
    if (!dir.empty()) {
      dir_ = fs::path(dir);
      fs::create_directories(*dir_);
    }
  }

  bool to_files() const { return dir_.has_value(); }

  void write(const std::string &name, const std::string &content) {
    if (!dir_)
      return;
    const auto path = *dir_ / name;
    std::ofstream f(path, std::ios::binary);
    if (!f)
      throw ValidationError("cannot write " + path.string());
    f << content;
  }

private:
  std::optional<fs::path> dir_;
};

std::string csv(const ComplexMatrix &a) {
  std::ostringstream os;
  write_csv(os, a);
  return os.str();
}

std::string trace_text(const SpacetimeTrace &t) {
  std::ostringstream os;
  write_trace(os, t);
  return os.str();
}

SpacetimeTrace load_trace(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw ValidationError("init: cannot open '" + path + "'");
  return read_trace(f);
}

std::pair<std::string, std::string> split_init(const std::string &spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

long long parse_int(const std::string &text, const std::string &what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size())
      return v;
  } catch (const std::exception &) {
  }
  throw ValidationError("init: bad " + what + " '" + text + "'");
}

std::uint64_t parse_seed(const std::string &text) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used == text.size() && !text.empty() && text.front() != '-')
      return v;
  } catch (const std::exception &) {
  }
  throw ValidationError("init: bad seed '" + text + "'");
}

ChainState ising_init(const std::string &spec, int s) {
  const auto [kind, arg] = split_init(spec);
  if (kind == "uniform") {
    if (arg == "+1" || arg == "1")
      return ChainState::uniform(s, 1);
    if (arg == "-1")
      return ChainState::uniform(s, -1);
    throw ValidationError("init: uniform takes +1 or -1");
  }
  if (kind == "defect")
    return ChainState::with_defect(s, static_cast<int>(parse_int(arg, "site")));
  if (kind == "random") {
    std::mt19937_64 rng(parse_seed(arg));
    std::vector<int> spins(2 * static_cast<std::size_t>(s));
    for (auto &v : spins)
      v = (rng() & 1) ? 1 : -1;
    return ChainState(std::move(spins));
  }
  if (kind == "file") {
    const auto trace = load_trace(arg);
    if (trace.m)
      throw ValidationError("init: '" + arg + "' holds a generalized trace");
    if (trace.s != s)
      throw ValidationError("init: file has S=" + std::to_string(trace.s) + ", expected " +
                            std::to_string(s));
    return state_from_slice(trace.slices.back());
  }
  throw ValidationError("init: unknown spec '" + spec + "'");
}

GenChainState dirac_init(const std::string &spec, int s, std::int64_t m) {
  const auto [kind, arg] = split_init(spec);
  const std::size_t n = 2 * static_cast<std::size_t>(s);
  if (kind == "zero" || (kind == "uniform" && arg == "0"))
    return GenChainState::zero(s, m);
  if (kind == "uniform") {
    const auto v = parse_int(arg, "value");
    return GenChainState(s, m, std::vector<std::int64_t>(n, v));
  }
  if (kind == "defect") {
    const auto site = parse_int(arg, "site");
    if (site < 1 || site > static_cast<long long>(n))
      throw ValidationError("init: defect site " + arg + " outside 1.." + std::to_string(n));
    std::vector<std::int64_t> values(n, 0);
    values[site - 1] = 1;
    return GenChainState(s, m, std::move(values));
  }
  if (kind == "random") {
    std::mt19937_64 rng(parse_seed(arg));
    const auto q = static_cast<std::uint64_t>(2 * m + 1);
    std::vector<std::int64_t> values(n);
    for (auto &v : values)
      v = static_cast<std::int64_t>(rng() % q) - m;
    return GenChainState(s, m, std::move(values));
  }
  if (kind == "values") {
    std::vector<std::int64_t> values;
    std::istringstream is(arg);
    for (std::string tok; std::getline(is, tok, ',');)
      values.push_back(parse_int(tok, "value"));
    return GenChainState(s, m, std::move(values));
  }
  if (kind == "file") {
    const auto trace = load_trace(arg);
    if (trace.s != s)
      throw ValidationError("init: file has S=" + std::to_string(trace.s) + ", expected " +
                            std::to_string(s));
    const auto &last = trace.slices.back();
    return GenChainState(s, m, last);
  }
  throw ValidationError("init: unknown spec '" + spec + "'");
}

void emit_trace(const SpacetimeTrace &trace, const Options &o, std::ostream &out) {
  Output files(o.out);
  files.write("trace.txt", trace_text(trace));
  if (o.render == "ascii") {
    const auto art = render_ascii(trace);
    files.write("diagram.txt", art);
    out << art;
  } else if (o.render == "svg") {
    const auto svg = render_svg(trace);
    files.write("diagram.svg", svg);
    if (!files.to_files())
      out << svg;
  } else if (!files.to_files()) {
    out << trace_text(trace);
  }
}

int cmd_cogwheel(const Options &o, std::ostream &out) {
  const CogwheelSpec spec{o.n, o.t, {}};
  validate(spec);
  if (o.n > kMaxDenseDim)
    throw BoundError("cogwheel: N=" + std::to_string(o.n) + " exceeds the dense limit " +
                     std::to_string(kMaxDenseDim));
  const auto u = step_matrix(spec);
  const auto h = hamiltonian_standard_basis(spec);
  const double residual = max_abs_diff(expm_hermitian(h, spec.t), u);

  std::ostringstream ev;
  for (double e : eigenvalues_h(spec))
    ev << format_double(e) << '\n';
  std::ostringstream report;
  report << "N=" << spec.n << " T=" << format_double(spec.t) << '\n'
         << "unitarity_deviation=" << format_double(unitarity_deviation(u)) << '\n'
         << "roundtrip_residual=" << format_double(residual) << '\n';

  Output files(o.out);
  files.write("step.csv", csv(u));
  files.write("hamiltonian.csv", csv(h));
  files.write("eigenvalues.txt", ev.str());
  files.write("report.txt", report.str());
  out << report.str() << "eigenvalues:\n" << ev.str();
  return residual < kRoundTripTolerance ? kOk : kVerification;
}

int cmd_chain(const Options &o, std::ostream &out) {
  const auto state = ising_init(o.init.empty() ? "defect:2" : o.init, o.s);
  emit_trace(evolve(state, o.steps), o, out);
  return kOk;
}

SlowdownMode parse_mode(const std::string &mode) {
  if (mode == "A" || mode == "a")
    return SlowdownMode::CaseA;
  if (mode == "B" || mode == "b")
    return SlowdownMode::CaseB;
  throw ValidationError("slowdown: case must be A or B");
}

int cmd_slowdown(const Options &o, std::ostream &out) {
  const SlowdownSpec spec{o.k0, o.l0, parse_mode(o.mode), o.t, o.d};
  validate(spec);
  Schedule schedule;
  if (!o.schedule.empty()) {
    if (spec.mode != SlowdownMode::CaseA)
      throw ValidationError("slowdown: --schedule applies to Case A only");
    const auto [kind, arg] = split_init(o.schedule);
    if (kind != "random")
      throw ValidationError("slowdown: schedule must be random:<seed>");
    std::mt19937_64 rng(parse_seed(arg));
    schedule = random_schedule(spec, rng);
  }
  const auto state = ising_init(o.init.empty() ? "defect:2" : o.init, o.s);
  const auto trace = evolve_slowdown(state, spec, o.cycles, schedule);
  emit_trace(trace, o, out);

  const auto residual = check_weyl_combination(trace);
  out << "transport_residual=" << residual.max() << '\n';
  try {
    const auto v = measure_velocity(trace);
    out << "velocity=" << v.displacement_per_cycle << '/' << v.steps_per_cycle
        << " expected=" << spec.net_shift() << '/' << spec.cycle_length() << '\n';
    const bool matches = std::abs(v.displacement_per_cycle) == spec.net_shift() &&
                         v.steps_per_cycle == spec.cycle_length();
    if (!matches)
      return kVerification;
  } catch (const ValidationError &) {
    out << "velocity=na\n";
  }
  return residual.max() == 0 ? kOk : kVerification;
}

int cmd_hamiltonian(const Options &o, std::ostream &out) {
  if (o.s < 1)
    throw ValidationError("hamiltonian: S must be positive");
  if (!(o.t > 0.0))
    throw ValidationError("hamiltonian: T must be positive");
  const auto g = extract_hamiltonian(o.s, o.t);

  std::map<std::size_t, std::size_t> lengths;
  for (const auto &orbit : g.orbits())
    ++lengths[orbit.size()];

  const bool dense = g.dim() <= kMaxDenseDim;
  double residual = g.max_orbit_roundtrip_error();
  if (dense)
    residual = std::max(residual, max_abs_diff(g.exp_dense(o.t),
                                               lift(chain_update_on_basis(o.s))));

  std::ostringstream report;
  report << "S=" << o.s << " T=" << format_double(o.t) << " dim=" << g.dim()
         << " orbits=" << g.orbits().size() << " fixed=" << g.fixed_point_count() << '\n';
  for (const auto &[len, count] : lengths)
    report << "orbit_length=" << len << " count=" << count << '\n';
  report << "roundtrip_residual=" << format_double(residual) << '\n';
  bool ok = residual < kRoundTripTolerance;
  if (2 * o.s <= 12) {
    const auto check = verify_series_form(o.s, o.t);
    report << "series_deviation=" << format_double(check.deviation) << '\n';
    ok = ok && check.deviation < kRoundTripTolerance;
  }

  Output files(o.out);
  files.write("orbits.txt", orbit_report(g));
  files.write("report.txt", report.str());
  if (dense && files.to_files())
    files.write("hamiltonian.csv", csv(g.to_dense()));
  out << report.str();
  return ok ? kOk : kVerification;
}

int cmd_perturb(const Options &o, std::ostream &out) {
  const int n = 2 * o.s;
  if (o.s < 1)
    throw ValidationError("perturb: S must be positive");
  if (n > 12)
    throw BoundError("perturb: 2S=" + std::to_string(n) + " qubits exceeds the dense limit 12");
  if (o.site_i < 1 || o.site_i > n || o.site_j < 1 || o.site_j > n || o.site_i == o.site_j)
    throw ValidationError("perturb: sites must be distinct and within 1.." + std::to_string(n));
  const int i = o.site_i - 1, j = o.site_j - 1;
  const std::size_t dim = std::size_t{1} << n;
  // All spins up except site j, so the exchanged pair differs.
  const std::size_t basis = (dim - 1) & ~(std::size_t{1} << j);
  const auto p = pauli_exchange(i, j, n);
  const ComplexMatrix one = ComplexMatrix::Identity(p.rows(), p.cols());

  std::ostringstream table;
  table << "eps measure closed_form remainder_over_eps2\n";
  for (double eps : o.eps) {
    const auto pert = perturbed_exchange(i, j, n, eps);
    const StateVector v{pert * StateVector::basis(dim, basis).amps};
    const double half = (std::numbers::pi / 2) * eps;
    const double closed = std::min(std::sin(half) * std::sin(half), std::cos(half) * std::cos(half));
    table << format_double(eps) << ' ' << format_double(superposition_measure(v)) << ' '
          << format_double(closed) << ' ';
    if (eps == 0.0)
      table << "na\n";
    else
      table << format_double(max_abs_diff(pert, p - kI * (std::numbers::pi / 2) * eps * one) /
                             (eps * eps))
            << '\n';
  }
  Output files(o.out);
  files.write("perturb.txt", table.str());
  out << table.str();
  return kOk;
}

int cmd_dirac(const Options &o, std::ostream &out) {
  const DiracSpec spec{o.s, o.m, o.mu};
  validate(spec);
  const auto state = dirac_init(o.init.empty() ? "defect:1" : o.init, o.s, o.m);
  emit_trace(evolve_dirac(state, spec, o.steps), o, out);
  return kOk;
}

int cmd_dirac_verify(const Options &o, std::ostream &out) {
  if (o.table) {
    if (o.m < 1)
      throw ValidationError("table: M must be positive");
    out << format_table(build_table(o.m, TableKind::Add)) << '\n'
        << format_table(build_table(o.m, TableKind::Sub));
    return kOk;
  }
  const DiracSpec spec{o.s, o.m, o.mu};
  validate(spec);
  const auto report = verify_bijective(spec, !o.exhaustive_only);
  std::ostringstream text;
  if (report.exhaustive) {
    text << (report.bijective ? "bijective, " : "not bijective, ") << report.image_size << '/'
         << report.domain_size << '\n'
         << "mode=exhaustive\n";
    if (report.bijective) {
      const auto hist = cycle_length_histogram(cycle_decompose(*report.certificate));
      for (const auto &[len, count] : hist)
        text << "cycle_length=" << len << " count=" << count << '\n';
    }
  } else {
    text << (report.bijective ? "bijective" : "not bijective") << '\n'
         << "mode=modular det=" << report.determinant_mod << " mod " << 2 * spec.m + 1 << '\n';
    if (const auto count = config_count(spec))
      text << "configurations=" << *count << '\n';
  }
  Output files(o.out);
  files.write("verify.txt", text.str());
  out << text.str();
  return report.bijective ? kOk : kVerification;
}

void add_out(CLI::App *cmd, Options &o) {
  cmd->add_option("--out", o.out, "Directory for output files");
}

void add_render(CLI::App *cmd, Options &o) {
  cmd->add_option("--render", o.render, "Diagram format")
      ->check(CLI::IsMember({"ascii", "svg", "none"}));
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Permutation-dynamics spin chains and their Hamiltonians", "ontca"};
  app.require_subcommand(1);
  Options o;

  auto *cog = app.add_subcommand("cogwheel", "Cogwheel step matrix, Hamiltonian and spectrum");
  cog->add_option("--n", o.n, "Number of states")->required();
  cog->add_option("--t", o.t, "Time step");
  add_out(cog, o);

  auto *chain = app.add_subcommand("chain", "Evolve the Ising exchange chain");
  chain->add_option("--s", o.s, "Half the number of sites")->required();
  chain->add_option("--steps", o.steps, "Number of updates");
  chain->add_option("--init", o.init, "uniform:+1|uniform:-1|defect:<site>|random:<seed>|file:<path>");
  add_render(chain, o);
  add_out(chain, o);

  auto *slow = app.add_subcommand("slowdown", "Chain with reduced signal velocity");
  slow->add_option("--s", o.s, "Half the number of sites")->required();
  slow->add_option("--k0", o.k0, "Forward updates per cycle")->required();
  slow->add_option("--l0", o.l0, "Reversed updates or translations per cycle")->required();
  slow->add_option("--case", o.mode, "A (reversal) or B (translations)");
  slow->add_option("--cycles", o.cycles, "Number of cycles");
  slow->add_option("--t", o.t, "Time step");
  slow->add_option("--d", o.d, "Spatial step");
  slow->add_option("--init", o.init, "Initial state (as for chain)");
  slow->add_option("--schedule", o.schedule, "Case A interleaving: random:<seed>");
  add_render(slow, o);
  add_out(slow, o);

  auto *ham = app.add_subcommand("hamiltonian", "Extract and check the chain Hamiltonian");
  ham->add_option("--s", o.s, "Half the number of sites")->required();
  ham->add_option("--t", o.t, "Time step");
  add_out(ham, o);

  auto *pert = app.add_subcommand("perturb", "Superposition created by a perturbed exchange");
  pert->add_option("--s", o.s, "Half the number of sites")->required();
  pert->add_option("--eps", o.eps, "Perturbation strengths");
  pert->add_option("--i", o.site_i, "First site (1-based)");
  pert->add_option("--j", o.site_j, "Second site (1-based)");
  add_out(pert, o);

  auto *dirac = app.add_subcommand("dirac", "Evolve the mass-coupled (2M+1)-state chain");
  dirac->add_option("--s", o.s, "Half the number of sites")->required();
  dirac->add_option("--m", o.m, "Values range over -M..M")->required();
  dirac->add_option("--mu", o.mu, "Integer mass");
  dirac->add_option("--steps", o.steps, "Number of updates");
  dirac->add_option("--init", o.init,
                    "zero|uniform:<v>|defect:<site>|random:<seed>|values:<v1,v2,...>|file:<path>");
  add_render(dirac, o);
  add_out(dirac, o);

  auto *verify = app.add_subcommand("dirac-verify", "Check that the mass-coupled update is a permutation");
  verify->add_option("--s", o.s, "Half the number of sites");
  verify->add_option("--m", o.m, "Values range over -M..M");
  verify->add_option("--mu", o.mu, "Integer mass");
  verify->add_flag("--table", o.table, "Print the addition and subtraction tables for M");
  verify->add_flag("--exhaustive-only", o.exhaustive_only, "Fail instead of using the determinant");
  add_out(verify, o);

  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kValidation;
  }

  try {
    if (*cog)
      return cmd_cogwheel(o, out);
    if (*chain)
      return cmd_chain(o, out);
    if (*slow)
      return cmd_slowdown(o, out);
    if (*ham)
      return cmd_hamiltonian(o, out);
    if (*pert)
      return cmd_perturb(o, out);
    if (*dirac)
      return cmd_dirac(o, out);
    if (*verify)
      return cmd_dirac_verify(o, out);
  } catch (const ValidationError &e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const BoundError &e) {
    err << "error: " << e.what() << '\n';
    return kBound;
  } catch (const fs::filesystem_error &e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

} // namespace ontca::cli
