#include <cmath>
#include <vector>

#include "menger/detail/kernel.hpp"
#include "menger/energy.hpp"
#include "menger/error.hpp"

namespace menger {

namespace {

struct Cells {
  std::vector<double> center, width;
};

// N midpoint cells on [-1,1], symmetric about 0 and geometrically graded
// toward it so the smallest cell resolves the strand gap delta
Cells graded_cells(int N, double delta) {
  const int half = N / 2;
  double hmin = std::min(delta / 4.0, 1.0 / half);
  auto span = [&](double r) { return std::abs(r - 1.0) < 1e-15 ? hmin * half : hmin * (std::pow(r, half) - 1.0) / (r - 1.0); };
  double r = 1.0;
  if (span(1.0) >= 1.0) {
    hmin = 1.0 / half;
  } else {
    double lo = 1.0, hi = 2.0;
    while (span(hi) < 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (span(mid) < 1.0 ? lo : hi) = mid;
    }
    r = 0.5 * (lo + hi);
  }
  std::vector<double> w(half);
  double total = 0;
  for (int i = 0; i < half; ++i) total += (w[i] = hmin * std::pow(r, i));
  Cells c;
  c.center.resize(N);
  c.width.resize(N);
  double edge = 0;
  for (int i = 0; i < half; ++i) {
    const double wi = w[i] / total;
    const double mid = edge + 0.5 * wi;
    edge += wi;
    c.center[half + i] = mid;
    c.width[half + i] = wi;
    c.center[half - 1 - i] = -mid;
    c.width[half - 1 - i] = wi;
  }
  return c;
}

// Points u1, u2 on strand A and v on strand B. Off the diagonal the kernel
// is evaluated on the actual points; on the diagonal u1 = u2 the kernel
// behaves like |u1-u2|^{q-p} g(u,v), so the cell integral of that power
// (2 h^{2-a} / ((1-a)(2-a)), a = p-q) times g at the cell center is used.
double mixed(const Cells& c, const std::vector<detail::Vec3<double>>& A,
             const std::vector<detail::Vec3<double>>& B, double delta, const EnergyParams& params) {
  const detail::KernelExponents ex(params);
  const int N = static_cast<int>(c.center.size());
  const double a = params.p - params.q;
  double total = 0;
  for (int iv = 0; iv < N; ++iv) {
    double sum = 0;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        if (i == j) {
          // |b ^ c| / |b| is the distance from the lone point to the other
          // strand's line, the same for both strands by symmetry
          const double u = c.center[i], v = c.center[iv];
          const double line2 = v * v + delta * delta;
          const double chord2 = u * u + v * v + delta * delta;
          const double g = std::pow(line2, 0.5 * params.q) / std::pow(chord2 * chord2, 0.5 * params.p);
          sum += 2.0 * std::pow(c.width[i], 2.0 - a) / ((1.0 - a) * (2.0 - a)) * g;
        } else {
          sum += c.width[i] * c.width[j] * detail::kernel_value<double>(A[i], A[j], B[iv], ex);
        }
      }
    }
    total += c.width[iv] * sum;
  }
  return total;
}

}  // namespace

double strand_pair_experiment(double delta, const EnergyParams& params, int N) {
  EnergyParams::make(params.p, params.q);
  if (!(delta > 0) || !std::isfinite(delta)) throw Error(ErrorKind::BadParams, "delta must be positive");
  if (N < 4 || N % 2) throw Error(ErrorKind::BadParams, "N must be even and at least 4");
  if (!(params.p - params.q < 1.0))
    throw Error(ErrorKind::BadParams, "p - q >= 1: the strand self term is not integrable");
  const Cells c = graded_cells(N, delta);
  std::vector<detail::Vec3<double>> s1(N), s2(N);
  for (int i = 0; i < N; ++i) {
    s1[i] = {c.center[i], 0.0, 0.0};
    s2[i] = {0.0, c.center[i], delta};
  }
  return mixed(c, s1, s2, delta, params) + mixed(c, s2, s1, delta, params);
}

}  // namespace menger
