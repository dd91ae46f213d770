#include "permbound/cli.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "permbound/bounds.hpp"
#include "permbound/io.hpp"
#include "permbound/permschur.hpp"
#include "permbound/psd.hpp"

namespace permbound {

using Json = nlohmann::ordered_json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroPivot:
    case ErrorCode::ZeroPermanent:
      return kExitNumericError;
    case ErrorCode::ConditionViolated:
      return kExitCheckFailed;
    default:
      return kExitInputError;
  }
}

std::string error_json(const Error& e) {
  Json doc;
  doc["error"] = std::string(to_string(e.code()));
  doc["message"] = e.what();
  if (e.site().step) doc["step"] = *e.site().step;
  if (e.site().row) doc["row"] = *e.site().row;
  if (e.site().col) doc["col"] = *e.site().col;
  return doc.dump();
}

namespace {

constexpr std::size_t kRationalDefaultMaxN = 12;

struct ReportOptions {
  std::size_t exact_max = 10;
  std::optional<std::vector<std::size_t>> ordering;
  std::optional<std::string> eps;
  bool snapshots = false;
  bool timing = false;
};

Arithmetic choose_arithmetic(const std::string& flag, std::size_t n) {
  if (flag == "rational") return Arithmetic::Rational;
  if (flag == "float") return Arithmetic::Float64;
  return n <= kRationalDefaultMaxN ? Arithmetic::Rational : Arithmetic::Float64;
}

template <Scalar T>
Json matrix_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Scalar T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(to_string(*v)) : Json(nullptr);
}

template <Scalar T>
Json build_report(const std::string& id, const Matrix<T>& a, const std::optional<Matrix<T>>& factor,
                  const ReportOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  require_square(a, "bound");
  std::optional<std::span<const std::size_t>> ordering;
  if (opt.ordering) ordering = std::span<const std::size_t>(*opt.ordering);

  const ProcessTrace<T> trace =
      factor ? run_process(gram_from_factor(*factor), opt.snapshots, ordering) : run_process(a, opt.snapshots, ordering);

  BoundReport<T> report;
  report.matrix_id = id;
  report.n = a.n();
  report.process_bound = product_of(trace.pivots);
  if (is_nonnegative(a)) report.rowsum_bound = rowsum_bound(a);
  if (a.n() <= opt.exact_max) report.exact_perm = permanent(a);
  fill_ratios(report);

  Json doc;
  doc["id"] = report.matrix_id;
  doc["n"] = report.n;
  doc["arithmetic"] = std::string(to_string(arithmetic_of<T>()));
  if (opt.ordering) doc["ordering"] = *opt.ordering;
  doc["process_bound"] = to_string(report.process_bound);
  doc["rowsum_bound"] = optional_json(report.rowsum_bound);
  if (report.exact_perm) doc["exact_perm"] = to_string(*report.exact_perm);
  if (opt.eps) {
    const T eps = parse_scalar<T>(*opt.eps);
    const DiagDominance<T> dd = diag_dominance_certify(a, eps);
    Json block;
    block["eps"] = to_string(eps);
    block["certified"] = dd.certified;
    block["bound"] = dd.certified ? Json(to_string(dd.bound)) : Json(nullptr);
    if (dd.violation) block["violation"] = {dd.violation->first, dd.violation->second};
    doc["diag_dominance"] = std::move(block);
  }
  doc["ratios"] = {{"process", optional_json(report.process_ratio)}, {"rowsum", optional_json(report.rowsum_ratio)}};
  if (opt.snapshots) {
    Json snaps = Json::array();
    for (const auto& s : trace.snapshots) snaps.push_back(matrix_json(s));
    doc["snapshots"] = std::move(snaps);
  }
  if (opt.timing) {
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    doc["elapsed_ms"] = elapsed.count();
  }
  return doc;
}

template <Scalar T>
Json report_for_file(const std::string& id, const MatrixFile& file, const ReportOptions& opt) {
  return build_report<T>(id, file.matrix<T>(), file.factor_matrix<T>(), opt);
}

// ---------------------------------------------------------------------------
// family
// ---------------------------------------------------------------------------

std::size_t worker_count(std::size_t jobs) {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PERMBOUND_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) fail(ErrorCode::ParameterOutOfRange, "PERMBOUND_THREADS must be a positive integer");
    cap = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(cap, jobs));
}

/// Runs jobs on a worker pool and writes each result line in index order as
/// soon as it and all earlier ones are done. The first failing job stops the
/// stream at its position and its exception is rethrown.
void run_ordered(std::size_t count, const std::function<std::string(std::size_t)>& job, std::ostream& out) {
  std::vector<std::optional<std::string>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::vector<bool> done(count, false);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};

  auto worker = [&] {
    while (!stop) {
      const std::size_t k = next++;
      if (k >= count) return;
      std::optional<std::string> line;
      std::exception_ptr error;
      try {
        line = job(k);
      } catch (...) {
        error = std::current_exception();
      }
      {
        std::lock_guard lock(mu);
        results[k] = std::move(line);
        errors[k] = error;
        done[k] = true;
      }
      cv.notify_all();
    }
  };
  std::vector<std::jthread> pool;
  const std::size_t workers = worker_count(count);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);

  std::exception_ptr failure;
  for (std::size_t k = 0; k < count; ++k) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return done[k]; });
    if (errors[k]) {
      failure = errors[k];
      stop = true;
      break;
    }
    out << *results[k] << '\n';
    out.flush();
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

struct FamilyOptions {
  std::string name;
  std::size_t n = 0;
  std::string c;
  std::string eps;
  std::string delta;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::string arithmetic = "auto";
  ReportOptions report;
};

template <Scalar T>
std::string family_line(const FamilyOptions& o, std::size_t k) {
  ReportOptions opt = o.report;
  if (o.name == "exp") {
    const std::size_t n = o.n + k;
    const T c = parse_scalar<T>(o.c);
    return build_report<T>("exp-n" + std::to_string(n) + "-c" + o.c, exp_family(n, c), std::nullopt, opt).dump();
  }
  if (o.name == "allones") {
    const std::size_t n = o.n + k;
    return build_report<T>("allones-n" + std::to_string(n), Matrix<T>::ones(n), std::nullopt, opt).dump();
  }
  std::mt19937_64 rng(o.seed + k);
  const Matrix<T> a = random_dd_instance(o.n, parse_scalar<T>(o.eps), parse_scalar<T>(o.delta), rng);
  opt.eps = o.eps;
  const std::string id = "random-dd-n" + std::to_string(o.n) + "-seed" + std::to_string(o.seed + k);
  return build_report<T>(id, a, std::nullopt, opt).dump();
}

int cmd_family(const FamilyOptions& o, std::ostream& out) {
  if (o.n < 1) fail(ErrorCode::ParameterOutOfRange, "family needs --n >= 1");
  if (o.count < 1) fail(ErrorCode::ParameterOutOfRange, "family needs --count >= 1");
  if (o.name == "exp" && o.c.empty()) fail(ErrorCode::ParameterOutOfRange, "family exp needs --c");
  if (o.name == "random-dd" && (o.eps.empty() || o.delta.empty()))
    fail(ErrorCode::ParameterOutOfRange, "family random-dd needs --eps and --delta");
  const std::size_t largest = o.name == "random-dd" ? o.n : o.n + o.count - 1;
  const Arithmetic arith = choose_arithmetic(o.arithmetic, largest);
  if (arith == Arithmetic::Rational) {
    run_ordered(o.count, [&](std::size_t k) { return family_line<Rational>(o, k); }, out);
  } else {
    run_ordered(o.count, [&](std::size_t k) { return family_line<double>(o, k); }, out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

class CheckLog {
 public:
  explicit CheckLog(std::ostream& out) : out_(out) {}

  void record(const std::string& name, bool pass, const std::string& detail = {}) {
    out_ << (pass ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) out_ << "  " << detail;
    out_ << '\n';
    if (!pass) ++failures_;
  }
  void skip(const std::string& name, const std::string& reason) { out_ << "SKIP " << name << "  " << reason << '\n'; }

  std::size_t failures() const noexcept { return failures_; }

 private:
  std::ostream& out_;
  std::size_t failures_ = 0;
};

template <Scalar T>
std::string sides(const T& lhs, const T& rhs) {
  return "lhs=" + to_string(lhs) + " rhs=" + to_string(rhs);
}

template <Scalar T>
Vector<T> column_head(const Matrix<T>& a, std::size_t col, std::size_t len) {
  Vector<T> v(len);
  for (std::size_t i = 0; i < len; ++i) v[i] = a(i, col);
  return v;
}

template <Scalar T>
Vector<T> row_head(const Matrix<T>& a, std::size_t row, std::size_t len) {
  Vector<T> v(len);
  for (std::size_t j = 0; j < len; ++j) v[j] = a(row, j);
  return v;
}

template <Scalar T>
void suite_schur(const Matrix<T>& a, CheckLog& log) {
  const std::size_t n = a.n();
  if (!is_nonnegative(a)) return log.skip("schur", "input has negative entries");
  for (std::size_t d = 1; d < n; ++d) {
    const BlockSplit<T> split(a, d);
    const std::string name = "schur.bound[d=" + std::to_string(d) + "]";
    if (is_zero(permanent(split.b()))) {
      log.skip(name, "per(B) = 0");
      continue;
    }
    const SchurBound<T> sb = schur_permanent_bound(split);
    bool ok = leq(sb.exact, sb.bound);
    if (split.k() == 1) ok = ok && approx_equal(sb.exact, sb.bound);
    log.record(name, ok, sides(sb.exact, sb.bound));
  }
  for (std::size_t d = 1; d <= n; ++d) {
    const Matrix<T> b = select(a, IndexSet::range(1, d), IndexSet::range(1, d));
    const std::string name = "schur.identity_dominance[d=" + std::to_string(d) + "]";
    if (is_zero(permanent(b))) {
      log.skip(name, "per(B) = 0");
      continue;
    }
    log.record(name, check_identity_dominance(b).holds);
  }
  if (is_zero(permanent(a))) {
    log.skip("schur.minor_ratio", "per(A) = 0");
  } else {
    const std::size_t max_size = n <= 5 ? n - 1 : 1;
    std::size_t cases = 0;
    std::optional<std::string> first_failure;
    for (std::uint64_t ms = 1; ms < (std::uint64_t{1} << n); ++ms) {
      const IndexSet s = IndexSet::from_mask(ms, n);
      if (s.size() > max_size) continue;
      for (std::uint64_t mt = 1; mt < (std::uint64_t{1} << n); ++mt) {
        const IndexSet t = IndexSet::from_mask(mt, n);
        if (t.size() != s.size()) continue;
        ++cases;
        const InequalitySides<T> r = minor_ratio_inequality(a, s, t);
        if (!r.holds && !first_failure) first_failure = "S=" + to_string(s) + " T=" + to_string(t) + " " + sides(r.lhs, r.rhs);
      }
    }
    log.record("schur.minor_ratio", !first_failure,
               first_failure ? *first_failure : std::to_string(cases) + " (S,T) pairs");
  }
  if (n >= 2) {
    if (is_zero(a(0, 0))) {
      log.skip("schur.condense", "a_11 = 0");
    } else {
      const IndexSet rest = IndexSet::range(2, n);
      Vector<T> x(n - 1), y(n - 1);
      for (std::size_t i = 1; i < n; ++i) {
        x[i - 1] = a(i, 0);
        y[i - 1] = a(0, i);
      }
      const InequalitySides<T> r = condense_inequality(a(0, 0), x, y, select(a, rest, rest));
      log.record("schur.condense", r.holds, sides(r.lhs, r.rhs));
    }
    const Matrix<T> b = select(a, IndexSet::range(1, n - 1), IndexSet::range(1, n - 1));
    if (is_zero(permanent(b))) {
      log.skip("schur.rank1_update", "per(B) = 0");
    } else {
      const PermanentSides<T> r =
          rank1_update_permanent(b, row_head(a, n - 1, n - 1), column_head(a, n - 1, n - 1), a(n - 1, n - 1));
      log.record("schur.rank1_update", approx_equal(r.lhs, r.rhs), sides(r.lhs, r.rhs));
    }
  }
}

template <Scalar T>
void suite_uncross(const Matrix<T>& a, CheckLog& log) {
  const std::size_t n = a.n();
  if (!is_nonnegative(a)) return log.skip("uncross", "input has negative entries");
  for (std::size_t d = 0; d < n; ++d) {
    const BlockSplit<T> split(a, d);
    for (std::size_t i = 1; i <= split.k(); ++i) {
      const PermanentSides<T> r = row_uncrossing_sides(split, i);
      bool ok = leq(r.lhs, r.rhs);
      if (d == 0 || split.k() == 1) ok = ok && approx_equal(r.lhs, r.rhs);
      log.record("uncross.rows[d=" + std::to_string(d) + ",i=" + std::to_string(i) + "]", ok, sides(r.lhs, r.rhs));
    }
  }
  if (n >= 3) {
    const std::size_t d = n - 2;
    const Matrix<T> b = select(a, IndexSet::range(1, d), IndexSet::range(1, d));
    const Matrix<T> w = select(a, IndexSet::range(d + 1, n), IndexSet::range(d + 1, n));
    const PermanentSides<T> r = two_row_inequality_sides(b, row_head(a, d, d), row_head(a, d + 1, d),
                                                         column_head(a, d, d), column_head(a, d + 1, d), w);
    log.record("uncross.two_row", leq(r.lhs, r.rhs), sides(r.lhs, r.rhs));
  }
  try {
    const auto checks = pivot_lower_bound_check(a);
    bool ok = true;
    std::string detail;
    for (const auto& c : checks) {
      if (!c.holds && ok) detail = "t=" + std::to_string(c.t) + " " + sides(c.ratio, c.pivot);
      ok = ok && c.holds;
    }
    log.record("uncross.pivot_lower_bound", ok, detail);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroPivot && e.code() != ErrorCode::ZeroPermanent) throw;
    log.skip("uncross.pivot_lower_bound", e.what());
  }
}

template <Scalar T>
void suite_boundedness(const Matrix<T>& a, CheckLog& log) {
  const std::size_t n = a.n();
  if (!is_nonnegative(a)) return log.skip("boundedness", "input has negative entries");
  bool unit = true;
  T big_m(1);
  for (std::size_t i = 0; i < n; ++i) {
    unit = unit && a(i, i) == T(1);
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) > big_m) big_m = a(i, j);
  }
  bool positive_diag = true;
  for (std::size_t i = 0; i < n; ++i) positive_diag = positive_diag && sgn_of(a(i, i)) > 0;
  if (positive_diag) {
    const Matrix<T> b = solve_majorant(a);
    const MajorantCertificate<T> cert = verify_majorant(MajorantCertificate<T>{a, b, MajorantMode::Equality, false});
    const T per = permanent(a);
    const T cap = diagonal_product(b);
    log.record("boundedness.majorant", cert.verified && leq(per, cap), "per=" + to_string(per) + " bound=" + to_string(cap));
  } else {
    log.skip("boundedness.majorant", "diagonal has a zero entry");
  }
  if (!unit) return log.skip("boundedness.entries", "diagonal is not all ones");
  if (n > 20) return log.skip("boundedness.entries", "n > 20");
  const std::string m_note = "M=" + to_string(big_m);
  const ProcessTrace<T> trace = run_process(a, true);
  const auto violation = entry_bound_check(trace, big_m);
  log.record("boundedness.entries", !violation,
             violation ? "t=" + std::to_string(violation->t) + " (i,j)=(" + std::to_string(violation->i) + "," +
                             std::to_string(violation->j) + ")"
                       : m_note);
  if (n > 8) return log.skip("boundedness.ratios", "exhaustive ratio checks limited to n <= 8");

  std::size_t cases = 0;
  std::optional<std::string> first;
  for (std::uint64_t ms = 0; ms < (std::uint64_t{1} << n); ++ms) {
    const IndexSet s = IndexSet::from_mask(ms, n);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        if (s.contains(i) || s.contains(j)) continue;
        ++cases;
        const RatioCheck<T> r = perm_ratio_check(a, s, i, j, big_m);
        if (!r.holds && !first) first = "S=" + to_string(s) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
      }
  }
  log.record("boundedness.perm_ratio", !first, first ? *first : std::to_string(cases) + " cases, " + m_note);

  cases = 0;
  first.reset();
  for (std::size_t t = 1; t <= n; ++t) {
    for (std::uint64_t ms = 0; ms < (std::uint64_t{1} << n); ++ms) {
      const IndexSet s = IndexSet::from_mask(ms, n);
      if (s.size() < 2 || s.members().front() <= t) continue;
      for (std::size_t i0 : s) {
        const IndexSet rest = s.without(i0);
        if (is_zero(permanent(select(trace.snapshot(t), rest, rest)))) continue;
        ++cases;
        const RatioCheck<T> r = cycle_sum_ratio(trace, t, s, i0, big_m);
        if (!r.holds && !first) first = "t=" + std::to_string(t) + " S=" + to_string(s) + " i0=" + std::to_string(i0);
      }
    }
  }
  log.record("boundedness.cycle_sum", !first, first ? *first : std::to_string(cases) + " cases, " + m_note);
}

template <Scalar T>
void suite_psd(const Matrix<T>& a, const std::optional<Matrix<T>>& factor, CheckLog& log) {
  if (!factor) return log.skip("psd", "input carries no Gram factor");
  const GramMatrix<T> g = gram_from_factor(*factor);
  const T per = permanent(g.gram());
  const ProcessTrace<T> trace = run_process(g, true);
  const T bound = product_of(trace.pivots);
  log.record("psd.process_sound", leq(per, bound), "per=" + to_string(per) + " bound=" + to_string(bound));
  const TrailingCertification<T> cert = certify_trailing_blocks(g, trace);
  log.record("psd.trailing_blocks", cert.certified,
             cert.failed_step ? "step " + std::to_string(*cert.failed_step) : std::string{});
  if (a.n() >= 2) {
    if (is_zero(g.gram()(a.n() - 1, a.n() - 1))) {
      log.skip("psd.schur", "last diagonal entry is 0");
    } else {
      const PsdSchurCheck<T> c = psd_schur_check(g);
      log.record("psd.schur", c.holds, sides(c.exact, c.rhs));
      log.record("psd.alpha_identity", c.identity_holds);
      log.record("psd.alpha_nonnegative", c.alphas_nonnegative);
    }
  }
  if (a.n() <= 6 && g.d() <= 10) {
    const T tensor = permanent_tensor(g);
    log.record("psd.tensor_formula", approx_equal(tensor, per), sides(tensor, per));
  }
}

struct VerifyOptions {
  std::string input;
  std::string suite = "all";
  std::string arithmetic = "auto";
  std::optional<std::string> majorant;
};

template <Scalar T>
int verify_with(const MatrixFile& file, const VerifyOptions& o, std::ostream& out) {
  const Matrix<T> a = file.matrix<T>();
  const std::optional<Matrix<T>> factor = file.factor_matrix<T>();
  CheckLog log(out);
  const bool all = o.suite == "all";
  if (all || o.suite == "schur") suite_schur(a, log);
  if (all || o.suite == "uncross") suite_uncross(a, log);
  if (all || o.suite == "boundedness") suite_boundedness(a, log);
  if (all || o.suite == "psd") suite_psd(a, factor, log);
  if (o.majorant) {
    const Matrix<T> b = read_matrix_file(*o.majorant).matrix<T>();
    try {
      verify_majorant(MajorantCertificate<T>{a, b, MajorantMode::Inequality, false});
      log.record("majorant.certificate", true, "per(A) <= " + to_string(diagonal_product(b)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ConditionViolated) throw;
      log.record("majorant.certificate", false, error_json(e));
    }
  }
  return log.failures() == 0 ? kExitOk : kExitCheckFailed;
}

std::string stem_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

struct BoundCli {
  std::string input;
  std::string arithmetic = "auto";
  std::optional<std::string> ordering;
  std::optional<std::string> out;
  ReportOptions report;
};

int cmd_bound(BoundCli o, std::ostream& out) {
  const MatrixFile file = read_matrix_file(o.input);
  if (o.ordering) o.report.ordering = parse_ordering(*o.ordering, file.n);
  const Arithmetic arith = choose_arithmetic(o.arithmetic, file.n);
  const Json doc = arith == Arithmetic::Rational ? report_for_file<Rational>(stem_of(o.input), file, o.report)
                                                 : report_for_file<double>(stem_of(o.input), file, o.report);
  const std::string text = doc.dump(2) + "\n";
  if (o.out) {
    std::ofstream f(*o.out);
    if (!f) fail(ErrorCode::ParseError, "cannot write '" + *o.out + "'");
    f << text;
  } else {
    out << text;
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const MatrixFile file = read_matrix_file(o.input);
  return choose_arithmetic(o.arithmetic, file.n) == Arithmetic::Rational ? verify_with<Rational>(file, o, out)
                                                                         : verify_with<double>(file, o, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified upper bounds on matrix permanents", "permbound"};
  app.require_subcommand(1);
  const std::vector<std::string> arith_choices{"auto", "float", "rational"};

  BoundCli bound;
  CLI::App* bound_cmd = app.add_subcommand("bound", "Process and row-sum bounds for one matrix file");
  bound_cmd->add_option("input", bound.input, "CSV or JSON matrix file")->required();
  bound_cmd->add_option("--arithmetic", bound.arithmetic, "float | rational (default: rational for n <= 12)")
      ->check(CLI::IsMember(arith_choices));
  bound_cmd->add_option("--exact-max", bound.report.exact_max, "Largest n for which the exact permanent is computed");
  bound_cmd->add_option("--ordering", bound.ordering, "Pivot order p1,p2,... (1-based)");
  bound_cmd->add_option("--eps", bound.report.eps, "Run the diagonal-dominance certificate with this epsilon");
  bound_cmd->add_flag("--snapshots", bound.report.snapshots, "Include every A^(t) in the report");
  bound_cmd->add_flag("--timing", bound.report.timing, "Include elapsed_ms");
  bound_cmd->add_option("--out", bound.out, "Write the report here instead of stdout");

  FamilyOptions family;
  CLI::App* family_cmd = app.add_subcommand("family", "Bounds over a generated family, one JSON line each");
  family_cmd->add_option("name", family.name, "exp | allones | random-dd")
      ->required()
      ->check(CLI::IsMember({"exp", "allones", "random-dd"}));
  family_cmd->add_option("--n", family.n, "Dimension (first dimension for exp and allones)")->required();
  family_cmd->add_option("--c", family.c, "Decay base for exp");
  family_cmd->add_option("--eps", family.eps, "random-dd epsilon");
  family_cmd->add_option("--delta", family.delta, "random-dd off-diagonal scale");
  family_cmd->add_option("--seed", family.seed, "random-dd seed; instance k uses seed + k");
  family_cmd->add_option("--count", family.count, "Number of instances");
  family_cmd->add_option("--arithmetic", family.arithmetic)->check(CLI::IsMember(arith_choices));
  family_cmd->add_option("--exact-max", family.report.exact_max);
  family_cmd->add_flag("--timing", family.report.timing);

  VerifyOptions verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run property checks on one matrix file");
  verify_cmd->add_option("input", verify.input)->required();
  verify_cmd->add_option("--suite", verify.suite, "schur | uncross | boundedness | psd | all")
      ->check(CLI::IsMember({"schur", "uncross", "boundedness", "psd", "all"}));
  verify_cmd->add_option("--arithmetic", verify.arithmetic)->check(CLI::IsMember(arith_choices));
  verify_cmd->add_option("--majorant", verify.majorant, "Matrix file holding a candidate majorant B");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << error_json(Error(ErrorCode::ParseError, e.what())) << '\n';
    return kExitInputError;
  }

  try {
    if (bound_cmd->parsed()) return cmd_bound(bound, out);
    if (family_cmd->parsed()) return cmd_family(family, out);
    return cmd_verify(verify, out);
  } catch (const Error& e) {
    err << error_json(e) << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace permbound
