#include "dhtk/mc.hpp"

#include <future>
#include <random>

#include "dhtk/errors.hpp"
#include "dhtk/random_util.hpp"

namespace dhtk {

namespace {

constexpr int kGridBits = 31;            // dyadic sample grid per coordinate
constexpr std::uint64_t kGrid = std::uint64_t{1} << kGridBits;
constexpr int kChunks = 16;              // fixed: chunk layout defines the stream

/// One facet inequality evaluated on grid points: sum_j coef[j]*u_j <= rhs,
/// where x_j = lo_j + span_j * u_j / 2^31. Coefficients are denominators
/// cleared, so the test is pure integer arithmetic; when the worst case
/// fits, a 128-bit fast path avoids big-integer traffic entirely.
struct FacetForm {
  std::vector<Int> coef;
  Int rhs;
  std::vector<__int128> coef_small;
  __int128 rhs_small = 0;
  bool fits_small = false;
};

FacetForm make_form(const Polytope::Facet& f, const RVec& lo, const RVec& span) {
  const Eigen::Index n = lo.size();
  // <a, lo> + sum_j a_j*span_j*u_j/2^31 <= b, scaled by 2^31 and by the
  // common denominator L of all rational coefficients.
  Rational constant = (f.offset - dot(f.normal, lo)) * Rational(Int(kGrid));
  std::vector<Rational> terms(static_cast<std::size_t>(n));
  Int common = constant.den();
  for (Eigen::Index j = 0; j < n; ++j) {
    terms[static_cast<std::size_t>(j)] = f.normal(j) * span(j);
    common = mp::lcm(common, terms[static_cast<std::size_t>(j)].den());
  }
  FacetForm form;
  form.rhs = (constant * Rational(common)).num();
  Int worst = mp::abs(form.rhs);
  for (const Rational& t : terms) {
    form.coef.push_back((t * Rational(common)).num());
    worst += mp::abs(form.coef.back()) * Int(kGrid);
  }
  if (worst < (Int(1) << 126)) {
    form.fits_small = true;
    form.rhs_small = form.rhs.convert_to<__int128>();
    for (const Int& c : form.coef) form.coef_small.push_back(c.convert_to<__int128>());
  }
  return form;
}

bool satisfies(const FacetForm& form, const std::vector<std::uint64_t>& u) {
  if (form.fits_small) {
    __int128 acc = 0;
    for (std::size_t j = 0; j < u.size(); ++j)
      acc += form.coef_small[j] * static_cast<__int128>(u[j]);
    return acc <= form.rhs_small;
  }
  Int acc = 0;
  for (std::size_t j = 0; j < u.size(); ++j) acc += form.coef[j] * Int(u[j]);
  return acc <= form.rhs;
}

}  // namespace

Histogram mc_pushforward(const Polytope& p, const Direction& x, long long samples,
                         int bins, std::uint64_t seed) {
  if (samples < 10000) throw InputError("need at least 10^4 samples");
  if (bins < 10) throw InputError("need at least 10 bins");
  if (x.dim() != p.dimension()) throw InputError("direction does not match the polytope dimension");

  const Eigen::Index n = p.dimension();
  RVec lo, hi;
  p.bounding_box(lo, hi);
  RVec span = hi - lo;

  std::vector<FacetForm> forms;
  for (const auto& f : p.facets()) forms.push_back(make_form(f, lo, span));

  // Level range from the exact vertex levels; bins are equal in double.
  Rational t_min = dot(p.vertices().front(), x.coords());
  Rational t_max = t_min;
  for (const RVec& v : p.vertices()) {
    Rational t = dot(v, x.coords());
    t_min = min(t_min, t);
    t_max = max(t_max, t);
  }
  const double t_lo = to_double(t_min);
  const double t_hi = to_double(t_max);

  Histogram hist;
  hist.total_samples = static_cast<std::uint64_t>(samples);
  for (int i = 0; i <= bins; ++i)
    hist.bin_edges.push_back(t_lo + (t_hi - t_lo) * static_cast<double>(i) /
                                        static_cast<double>(bins));
  hist.counts.assign(static_cast<std::size_t>(bins), 0);

  std::vector<double> lo_d(static_cast<std::size_t>(n)), span_d(static_cast<std::size_t>(n)),
      xdir_d(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    lo_d[static_cast<std::size_t>(j)] = to_double(lo(j));
    span_d[static_cast<std::size_t>(j)] = to_double(span(j));
    xdir_d[static_cast<std::size_t>(j)] = to_double(x.coords()(j));
  }

  auto run_chunk = [&](int chunk) {
    std::uint64_t quota = static_cast<std::uint64_t>(samples) / kChunks +
                          (chunk == 0 ? static_cast<std::uint64_t>(samples) % kChunks : 0);
    std::uint64_t state = seed;
    std::uint64_t chunk_seed = 0;
    for (int i = 0; i <= chunk; ++i) chunk_seed = splitmix64(state);
    std::mt19937_64 rng(chunk_seed);

    std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
    std::vector<std::uint64_t> u(static_cast<std::size_t>(n));
    std::uint64_t accepted = 0, draws = 0;
    while (accepted < quota) {
      ++draws;
      if (draws >= 200000 && accepted * 1000 < draws)
        throw InputError("degenerate polytope for sampling");
      for (auto& uj : u) uj = draw_below(rng, kGrid);
      bool inside = true;
      for (const FacetForm& form : forms)
        if (!satisfies(form, u)) { inside = false; break; }
      if (!inside) continue;
      ++accepted;
      double t = 0.0;
      for (std::size_t j = 0; j < u.size(); ++j)
        t += xdir_d[j] * (lo_d[j] + span_d[j] * (static_cast<double>(u[j]) /
                                                 static_cast<double>(kGrid)));
      auto bin = static_cast<long long>((t - t_lo) / (t_hi - t_lo) * bins);
      if (bin < 0) bin = 0;
      if (bin >= bins) bin = bins - 1;
      ++counts[static_cast<std::size_t>(bin)];
    }
    return counts;
  };

  std::vector<std::future<std::vector<std::uint64_t>>> futures;
  for (int chunk = 0; chunk < kChunks; ++chunk)
    futures.push_back(std::async(std::launch::async, run_chunk, chunk));
  for (auto& fut : futures) {
    std::vector<std::uint64_t> counts = fut.get();
    for (std::size_t i = 0; i < counts.size(); ++i) hist.counts[i] += counts[i];
  }
  return hist;
}

Rational histogram_supnorm(const Histogram& hist, const PLDensity& exact) {
  if (hist.counts.empty() || hist.total_samples == 0)
    throw InputError("empty histogram");
  Rational mass = exact.integral();
  Rational total(Int(hist.total_samples));
  Rational worst(0);
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    Rational left = rational_from_double(hist.bin_edges[i]);
    Rational right = rational_from_double(hist.bin_edges[i + 1]);
    Rational width = right - left;
    if (!(width > Rational(0))) throw InputError("histogram bins must be increasing");
    Rational estimate = Rational(Int(hist.counts[i])) * mass / (total * width);
    Rational reference = integral_between(exact, left, right) / width;
    worst = max(worst, abs(estimate - reference));
  }
  return worst;
}

}  // namespace dhtk
