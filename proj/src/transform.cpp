#include "qsixj/transform.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

#include "qsixj/errors.hpp"

namespace qsixj {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

// -------------------------------------------------------------------- input

DftInput DftInput::make(std::shared_ptr<const RootContext> ctx, const DeepPartition& partition,
                        std::span<const int> b_deep, std::span<const int> a_regular) {
  DftInput in;
  in.ctx = std::move(ctx);
  in.partition = partition;
  const auto deep = partition.deep_edges();
  const auto regular = partition.regular_edges();
  if (b_deep.size() != deep.size())
    throw InputError("expected " + std::to_string(deep.size()) + " deep colors, got " + std::to_string(b_deep.size()));
  if (a_regular.size() != regular.size())
    throw InputError("expected " + std::to_string(regular.size()) + " regular colors, got " +
                     std::to_string(a_regular.size()));
  for (std::size_t i = 0; i < deep.size(); ++i) in.colors[deep[i]] = b_deep[i];
  for (std::size_t j = 0; j < regular.size(); ++j) in.colors[regular[j]] = a_regular[j];
  in.validate();
  return in;
}

std::vector<int> DftInput::b_deep() const {
  std::vector<int> out;
  for (int e : partition.deep_edges()) out.push_back(colors[e]);
  return out;
}

std::vector<int> DftInput::a_regular() const {
  std::vector<int> out;
  for (int e : partition.regular_edges()) out.push_back(colors[e]);
  return out;
}

DftInput DftInput::dual() const {
  DftInput d = *this;
  d.partition = partition.complement();
  return d;
}

DftInput DftInput::planar_dual() const {
  DftInput d = *this;
  std::array<int, 6> edges{};
  const auto deep = partition.complement().deep_edges();
  std::size_t n = 0;
  // Exchange edges 3 and 6 (0-based 2 and 5).
  auto swap36 = [](int e) { return e == 2 ? 5 : e == 5 ? 2 : e; };
  for (int e : deep) edges[n++] = swap36(e) + 1;
  d.partition = DeepPartition::from_edges(std::span<const int>(edges.data(), n));
  std::swap(d.colors[2], d.colors[5]);
  return d;
}

bool DftInput::all_colors_even() const {
  return std::all_of(colors.begin(), colors.end(), [](int c) { return c % 2 == 0; });
}

void DftInput::validate() const {
  if (!ctx) throw InputError("DftInput without a RootContext");
  for (int e = 0; e < 6; ++e)
    if (colors[e] < 0 || colors[e] > r() - 2)
      throw InputError("color " + std::to_string(colors[e]) + " on edge " + std::to_string(e + 1) + " outside [0, " +
                       std::to_string(r() - 2) + "]");
}

// ---------------------------------------------------------------- precision

Precision Precision::parse(const std::string& text) {
  if (text == "auto") return {PrecisionMode::automatic, 0};
  if (text == "double") return {PrecisionMode::log_double, 0};
  std::string digits = text.rfind("mp:", 0) == 0 ? text.substr(3) : text;
  try {
    std::size_t used = 0;
    const long bits = std::stol(digits, &used);
    if (used == digits.size() && bits >= 64 && bits <= (1L << 20)) return {PrecisionMode::fixed_bits, bits};
  } catch (const std::exception&) {
  }
  throw InputError("precision must be 'auto', 'double' or a bit count in [64, 2^20], got '" + text + "'");
}

std::string Precision::to_string() const {
  switch (mode) {
    case PrecisionMode::log_double:
      return "double";
    case PrecisionMode::automatic:
      return "auto";
    case PrecisionMode::fixed_bits:
      return "mp:" + std::to_string(bits);
  }
  return "?";
}

SignedLog DftResult::signed_value() const {
  if (value.zero) return SignedLog::zero();
  return {std::cos(value.phase) >= 0 ? 1 : -1, value.log_mag};
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SIXJ_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double log_duality_factor(const RootContext& ctx, int deep_count, DualityForm form) {
  if (deep_count < 0 || deep_count > 6) throw InputError("deep_count must lie in 0..6");
  const double s = ctx.sin_base();
  if (form == DualityForm::planar_even) return (deep_count - 3) * std::log(ctx.r() / (4.0 * s * s));
  return (3 - deep_count) * std::log(ctx.r() / (2.0 * s * s));
}

double duality_factor(const RootContext& ctx, int deep_count, DualityForm form) {
  if (deep_count == 3) return 1.0;
  return std::exp(log_duality_factor(ctx, deep_count, form));
}

// ------------------------------------------------------------------- engine

namespace {

// Enumeration plan over the deep colors. At each step the range of the new
// color is cut down by every vertex triple whose other two edges are already
// fixed: parity from the even-sum rule, bounds from the triangle inequalities
// and the 2(r-2) cap. Whatever the plan admits is exactly the admissible set.
struct Step {
  int edge = 0;
  std::vector<std::array<int, 2>> partners;
};

struct Plan {
  std::vector<Step> steps;
  bool regular_admissible = true;
};

Plan make_plan(const DftInput& in) {
  Plan plan;
  std::array<bool, 6> known{};
  for (int e : in.partition.regular_edges()) known[e] = true;
  for (const auto& t : kVertexTriples)
    if (known[t[0]] && known[t[1]] && known[t[2]] && !admissible_triple(*in.ctx, in.colors[t[0]], in.colors[t[1]], in.colors[t[2]]))
      plan.regular_admissible = false;
  for (int e : in.partition.deep_edges()) {
    Step s;
    s.edge = e;
    for (const auto& t : kVertexTriples) {
      if (t[0] != e && t[1] != e && t[2] != e) continue;
      std::array<int, 2> others{};
      int n = 0;
      for (int x : t)
        if (x != e) others[n++] = x;
      if (known[others[0]] && known[others[1]]) s.partners.push_back(others);
    }
    known[e] = true;
    plan.steps.push_back(std::move(s));
  }
  return plan;
}

struct Range {
  int lo = 0;
  int hi = -1;
  int step = 1;
};

Range step_range(const Step& s, const Coloring6& c, int r, bool even) {
  const int top = r - 2;
  Range out{0, top, 1};
  int parity = -1;
  for (const auto& p : s.partners) {
    const int x = c[p[0]], y = c[p[1]];
    out.lo = std::max(out.lo, std::abs(x - y));
    out.hi = std::min({out.hi, x + y, 2 * top - x - y});
    const int par = (x + y) & 1;
    if (parity < 0) {
      parity = par;
    } else if (parity != par) {
      return {0, -1, 1};
    }
  }
  if (even) {
    if (parity == 1) return {0, -1, 1};
    parity = 0;
  }
  if (parity >= 0) {
    if ((out.lo & 1) != parity) ++out.lo;
    out.step = 2;
  }
  return out;
}

struct Totals {
  SignedLog value;
  double max_bound = kNegInf;
  long long count = 0;
};

template <class Num>
class Engine {
 public:
  using Sum = typename NumTraits<Num>::Sum;

  Engine(const FactorialTables<Num>& tables, const DftInput& in, bool even)
      : t_(tables), in_(in), plan_(make_plan(in)), even_(even) {}

  Totals run(unsigned threads) {
    Totals out;
    if (!plan_.regular_admissible) return out;

    if (plan_.steps.empty()) {
      Worker w(t_);
      Coloring6 c = in_.colors;
      Sum sum = NumTraits<Num>::make_sum(t_);
      w.evaluate(c, in_, sum);
      out.value = NumTraits<Num>::to_signed_log(sum.value());
      out.max_bound = w.max_bound;
      out.count = w.count;
      return out;
    }

    // Chunks are the values of the first deep color; each chunk is summed in
    // a fixed order and chunks are merged in index order afterwards, so the
    // result does not depend on the number of workers.
    const Range first = step_range(plan_.steps[0], in_.colors, t_.r, even_);
    std::vector<int> chunk_values;
    for (int v = first.lo; v <= first.hi; v += first.step) chunk_values.push_back(v);
    const std::size_t n_chunks = chunk_values.size();

    std::vector<Sum> sums;
    sums.reserve(n_chunks);
    for (std::size_t i = 0; i < n_chunks; ++i) sums.push_back(NumTraits<Num>::make_sum(t_));
    std::vector<double> bounds(n_chunks, kNegInf);
    std::vector<long long> counts(n_chunks, 0);

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      Worker w(t_);
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n_chunks) break;
        w.max_bound = kNegInf;
        w.count = 0;
        Coloring6 c = in_.colors;
        c[plan_.steps[0].edge] = chunk_values[i];
        descend(w, c, 1, sums[i]);
        bounds[i] = w.max_bound;
        counts[i] = w.count;
      }
    };
    const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n_chunks));
    if (n_threads <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(work);
    }

    Sum total = NumTraits<Num>::make_sum(t_);
    for (std::size_t i = 0; i < n_chunks; ++i) {
      total.merge(sums[i]);
      out.max_bound = std::max(out.max_bound, bounds[i]);
      out.count += counts[i];
    }
    out.value = NumTraits<Num>::to_signed_log(total.value());
    return out;
  }

 private:
  struct Worker {
    explicit Worker(const FactorialTables<Num>& t)
        : ksum(NumTraits<Num>::make_sum(t)), term(t.prototype), delta(t.prototype), hprod(t.prototype), t_(t) {}

    Sum ksum;
    Num term;
    Num delta;
    Num hprod;
    double max_bound = kNegInf;
    long long count = 0;
    const FactorialTables<Num>& t_;

    void evaluate(const Coloring6& c, const DftInput& in, Sum& out) {
      ++count;
      const int r = t_.r;
      hprod.assign(t_.fact[0]);
      int parity = 0;
      for (int e = 0; e < 6; ++e) {
        if (!in.partition.is_deep(e)) continue;
        const long m = (static_cast<long>(c[e]) + 1) * (static_cast<long>(in.colors[e]) + 1) % r;
        if (m == 0) return;  // H vanishes
        hprod *= t_.qint[m];
        parity += c[e] + in.colors[e];
      }
      const SixjShape shape = sixj_shape(r, c);
      ksum.reset();
      accumulate_k_sum(t_, shape, term, ksum);
      const auto& s = ksum.value();
      delta_squared_product(t_, c, delta);

      const double bound = 2.0 * ksum.max_log() + NumTraits<Num>::to_signed_log(delta).log_mag +
                           NumTraits<Num>::to_signed_log(hprod).log_mag;
      max_bound = std::max(max_bound, bound);

      term.assign(delta);
      term *= s;
      term *= s;
      term *= hprod;
      if ((parity + shape.color_sum) & 1) term.negate();
      out.add(term);
    }
  };

  void descend(Worker& w, Coloring6& c, std::size_t depth, Sum& out) {
    if (depth == plan_.steps.size()) {
      w.evaluate(c, in_, out);
      return;
    }
    const Step& s = plan_.steps[depth];
    const Range rg = step_range(s, c, t_.r, even_);
    for (int v = rg.lo; v <= rg.hi; v += rg.step) {
      c[s.edge] = v;
      descend(w, c, depth + 1, out);
    }
    c[s.edge] = in_.colors[s.edge];
  }

  const FactorialTables<Num>& t_;
  const DftInput& in_;
  Plan plan_;
  bool even_;
};

double lost_bits_of(const Totals& t) {
  if (t.count == 0 || t.max_bound == kNegInf) return 0.0;
  if (t.value.is_zero()) return kInf;
  return std::max(0.0, (t.max_bound - t.value.log_mag) / std::numbers::ln2);
}

// Usable bits of the log-domain path: each term carries an absolute log error
// of a few ulps of its log-magnitude.
double log_domain_bits(const Totals& t) {
  const double scale = std::isfinite(t.max_bound) ? std::abs(t.max_bound) : 0.0;
  return 52.0 - std::log2(1.0 + scale) - 4.0;
}

DftResult finish(const Totals& t, long bits, double available, bool resolved) {
  DftResult res;
  res.value = PhaseLog::from_signed(t.value);
  res.term_count = t.count;
  res.empty_sum = t.count == 0;
  res.max_term_log = t.max_bound;
  res.lost_bits = lost_bits_of(t);
  res.precision_bits = bits;
  res.available_bits = available;
  res.resolved = resolved;
  return res;
}

double mp_bits(long bits) { return static_cast<double>(bits) - 16.0; }

long round_bits(double bits) { return std::max<long>(128, 64 * static_cast<long>(std::ceil(bits / 64.0))); }

DftResult dft_direct(const DftInput& in, const DftOptions& opt) {
  const unsigned threads = resolve_threads(opt.threads);
  const bool even = opt.color_set == ColorSet::even;

  auto run_mp = [&](long bits) {
    const FactorialTables<MpReal> tables = make_mp_tables(in.r(), bits);
    Engine<MpReal> engine(tables, in, even);
    const Totals t = engine.run(threads);
    const bool ok = mp_bits(bits) - lost_bits_of(t) >= opt.target_bits;
    return std::pair{t, ok};
  };

  if (opt.precision.mode == PrecisionMode::fixed_bits) {
    auto [t, ok] = run_mp(opt.precision.bits);
    return finish(t, opt.precision.bits, mp_bits(opt.precision.bits), ok);
  }

  Engine<SignedLog> engine(in.ctx->tables(), in, even);
  const Totals t = engine.run(threads);
  const double lost = lost_bits_of(t);
  const bool ok = log_domain_bits(t) - lost >= opt.target_bits;
  if (ok || opt.precision.mode == PrecisionMode::log_double || t.count == 0)
    return finish(t, 0, log_domain_bits(t), ok);

  double estimate = lost;
  if (opt.expected_log_mag && std::isfinite(t.max_bound))
    estimate = std::max(estimate, (t.max_bound - *opt.expected_log_mag) / std::numbers::ln2);
  long bits = round_bits(estimate + opt.target_bits + 64.0);
  // A sum that stays below resolution at two successive precisions is an
  // exact zero for all practical purposes; further doubling cannot help.
  bool was_residue = lost >= log_domain_bits(t);
  for (;;) {
    bits = std::min(bits, opt.max_bits);
    auto [tm, good] = run_mp(bits);
    const bool residue = lost_bits_of(tm) >= mp_bits(bits);
    if (good || bits >= opt.max_bits || (residue && was_residue)) return finish(tm, bits, mp_bits(bits), good);
    was_residue = residue;
    const double lost_mp = lost_bits_of(tm);
    bits = round_bits(std::max(2.0 * static_cast<double>(bits),
                               (std::isfinite(lost_mp) ? lost_mp : 0.0) + opt.target_bits + 64.0));
  }
}

}  // namespace

DftResult dft_tetra(const DftInput& input, const DftOptions& options) {
  input.validate();
  const int deep = input.partition.deep_count();
  if (options.duality_shortcut && deep > 3 && options.color_set == ColorSet::even && input.all_colors_even()) {
    const double log_factor = log_duality_factor(*input.ctx, deep, DualityForm::planar_even);
    DftResult res = dft_direct(input.planar_dual(), options);
    res.via_duality = true;
    if (!res.value.zero) res.value.log_mag += log_factor;
    if (std::isfinite(res.max_term_log)) res.max_term_log += log_factor;
    return res;
  }
  return dft_direct(input, options);
}

DualityReport duality_sides(const DftInput& input, const DftOptions& options, DualityForm form) {
  DftOptions direct = options;
  direct.duality_shortcut = false;
  if (form == DualityForm::planar_even) {
    if (!input.all_colors_even()) throw InputError("the planar duality form needs even colors");
    direct.color_set = ColorSet::even;
  }
  DualityReport rep;
  rep.lhs = dft_tetra(input, direct);
  rep.rhs = dft_tetra(form == DualityForm::planar_even ? input.planar_dual() : input.dual(), direct);
  const int deep = input.partition.deep_count();
  rep.factor = duality_factor(*input.ctx, deep, form);
  const double log_factor = log_duality_factor(*input.ctx, deep, form);
  if (!rep.rhs.value.zero) rep.rhs.value.log_mag += log_factor;
  if (std::isfinite(rep.rhs.max_term_log)) rep.rhs.max_term_log += log_factor;
  if (rep.lhs.consistent_with_zero() && rep.rhs.consistent_with_zero())
    rep.discrepancy = 0.0;
  else
    rep.discrepancy = relative_discrepancy(rep.lhs.signed_value(), rep.rhs.signed_value());
  return rep;
}

double duality_check(const DftInput& input, const DftOptions& options, DualityForm form) {
  return duality_sides(input, options, form).discrepancy;
}

}  // namespace qsixj
