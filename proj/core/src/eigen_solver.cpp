#include "rescon/eigen_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

#include "rescon/errors.hpp"

namespace rescon {

namespace {

#if defined(__SIZEOF_FLOAT128__)
using ExtendedReal = __float128;
#else
using ExtendedReal = long double;
#endif

template <typename R>
R abs_of(R x) {
  return x < R(0) ? -x : x;
}

template <typename R>
R sqrt_of(R x) {
  if constexpr (std::is_same_v<R, double> || std::is_same_v<R, long double>) {
    return std::sqrt(x);
  } else {
    if (x <= R(0)) return R(0);
    // Seed from double then Newton; each step doubles the correct bits.
    R y = static_cast<R>(std::sqrt(static_cast<double>(x)));
    for (int i = 0; i < 3; ++i) y = (y + x / y) / R(2);
    return y;
  }
}

template <typename R>
constexpr R epsilon_of() {
  if constexpr (std::is_same_v<R, double>) {
    return std::numeric_limits<double>::epsilon();
  } else if constexpr (std::is_same_v<R, long double>) {
    return std::numeric_limits<long double>::epsilon();
  } else {
    R e = 1;
    for (int i = 0; i < 112; ++i) e /= 2;
    return e;
  }
}

template <typename R>
class Work {
public:
  explicit Work(const DenseMatrix& a) : n_(a.rows()), h_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = static_cast<R>(a(i, j));
  }

  R& at(std::size_t i, std::size_t j) { return h_[i * n_ + j]; }
  std::size_t size() const { return n_; }

private:
  std::size_t n_;
  std::vector<R> h_;
};

// Parlett-Reinsch diagonal scaling by powers of two (exact in binary).
template <typename R>
void balance(Work<R>& h) {
  const std::size_t n = h.size();
  const R radix = 2, sqrdx = 4;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      R r = 0, c = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs_of(h.at(j, i));
        r += abs_of(h.at(i, j));
      }
      if (c == R(0) || r == R(0)) continue;
      R g = r / radix, f = 1;
      const R s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < R(0.95) * s) {
        done = false;
        g = R(1) / f;
        for (std::size_t j = 0; j < n; ++j) h.at(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) h.at(j, i) *= f;
      }
    }
  }
}

template <typename R>
void reduce_to_hessenberg(Work<R>& h) {
  const std::size_t n = h.size();
  if (n < 3) return;
  std::vector<R> ort(n, R(0));
  for (std::size_t m = 1; m + 1 < n; ++m) {
    R scale = 0;
    for (std::size_t i = m; i < n; ++i) scale += abs_of(h.at(i, m - 1));
    if (scale == R(0)) continue;
    R hh = 0;
    for (std::size_t i = n; i-- > m;) {
      ort[i] = h.at(i, m - 1) / scale;
      hh += ort[i] * ort[i];
    }
    R g = sqrt_of(hh);
    if (ort[m] > R(0)) g = -g;
    hh -= ort[m] * g;
    ort[m] -= g;
    for (std::size_t j = m; j < n; ++j) {
      R f = 0;
      for (std::size_t i = n; i-- > m;) f += ort[i] * h.at(i, j);
      f /= hh;
      for (std::size_t i = m; i < n; ++i) h.at(i, j) -= f * ort[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      R f = 0;
      for (std::size_t j = n; j-- > m;) f += ort[j] * h.at(i, j);
      f /= hh;
      for (std::size_t j = m; j < n; ++j) h.at(i, j) -= f * ort[j];
    }
    h.at(m, m - 1) = scale * g;
    for (std::size_t i = m + 1; i < n; ++i) h.at(i, m - 1) = 0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix, eigenvalues only.
template <typename R>
std::vector<std::complex<double>> hessenberg_qr(Work<R>& h) {
  const std::size_t size = h.size();
  std::vector<std::complex<double>> out(size);
  if (size == 0) return out;

  const R eps = epsilon_of<R>();
  R norm = 0;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = (i == 0 ? 0 : i - 1); j < size; ++j) norm += abs_of(h.at(i, j));

  long n = static_cast<long>(size) - 1;
  const long low = 0;
  R exshift = 0;
  int iter = 0;
  long total_iter = 0;
  const long max_total = 60 * static_cast<long>(size) + 100;
  R p = 0, q = 0, r = 0, s = 0, z = 0, w, x, y;

  auto H = [&](long i, long j) -> R& { return h.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };

  while (n >= low) {
    long l = n;
    while (l > low) {
      s = abs_of(H(l - 1, l - 1)) + abs_of(H(l, l));
      if (s == R(0)) s = norm;
      if (abs_of(H(l, l - 1)) < eps * s) break;
      --l;
    }

    if (l == n) {
      H(n, n) += exshift;
      out[n] = {static_cast<double>(H(n, n)), 0.0};
      --n;
      iter = 0;
    } else if (l == n - 1) {
      w = H(n, n - 1) * H(n - 1, n);
      p = (H(n - 1, n - 1) - H(n, n)) / R(2);
      q = p * p + w;
      z = sqrt_of(abs_of(q));
      H(n, n) += exshift;
      H(n - 1, n - 1) += exshift;
      x = H(n, n);
      if (q >= R(0)) {
        z = p >= R(0) ? p + z : p - z;
        const R first = x + z;
        R second = first;
        if (z != R(0)) second = x - w / z;
        out[n - 1] = {static_cast<double>(first), 0.0};
        out[n] = {static_cast<double>(second), 0.0};
      } else {
        out[n - 1] = {static_cast<double>(x + p), static_cast<double>(z)};
        out[n] = {static_cast<double>(x + p), static_cast<double>(-z)};
      }
      n -= 2;
      iter = 0;
    } else {
      x = H(n, n);
      y = 0;
      w = 0;
      if (l < n) {
        y = H(n - 1, n - 1);
        w = H(n, n - 1) * H(n - 1, n);
      }
      if (iter == 10) {
        // Wilkinson's exceptional shift.
        exshift += x;
        for (long i = low; i <= n; ++i) H(i, i) -= x;
        s = abs_of(H(n, n - 1)) + abs_of(H(n - 1, n - 2));
        x = y = R(0.75) * s;
        w = R(-0.4375) * s * s;
      }
      if (iter == 30) {
        s = (y - x) / R(2);
        s = s * s + w;
        if (s > R(0)) {
          s = sqrt_of(s);
          if (y < x) s = -s;
          s = x - w / ((y - x) / R(2) + s);
          for (long i = low; i <= n; ++i) H(i, i) -= s;
          exshift += s;
          x = y = w = R(0.964);
        }
      }
      ++iter;
      if (++total_iter > max_total) throw Error("eigenvalues: QR iteration did not converge");

      long m = n - 2;
      while (m >= l) {
        z = H(m, m);
        r = x - z;
        s = y - z;
        p = (r * s - w) / H(m + 1, m) + H(m, m + 1);
        q = H(m + 1, m + 1) - z - r - s;
        r = H(m + 2, m + 1);
        s = abs_of(p) + abs_of(q) + abs_of(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        if (abs_of(H(m, m - 1)) * (abs_of(q) + abs_of(r)) <
            eps * (abs_of(p) * (abs_of(H(m - 1, m - 1)) + abs_of(z) + abs_of(H(m + 1, m + 1))))) {
          break;
        }
        --m;
      }
      for (long i = m + 2; i <= n; ++i) {
        H(i, i - 2) = 0;
        if (i > m + 2) H(i, i - 3) = 0;
      }

      for (long k = m; k <= n - 1; ++k) {
        const bool notlast = k != n - 1;
        if (k != m) {
          p = H(k, k - 1);
          q = H(k + 1, k - 1);
          r = notlast ? H(k + 2, k - 1) : R(0);
          x = abs_of(p) + abs_of(q) + abs_of(r);
          if (x == R(0)) continue;
          p /= x;
          q /= x;
          r /= x;
        }
        s = sqrt_of(p * p + q * q + r * r);
        if (p < R(0)) s = -s;
        if (s == R(0)) continue;
        if (k != m) {
          H(k, k - 1) = -s * x;
        } else if (l != m) {
          H(k, k - 1) = -H(k, k - 1);
        }
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;
        for (long j = k; j <= n; ++j) {
          p = H(k, j) + q * H(k + 1, j);
          if (notlast) {
            p += r * H(k + 2, j);
            H(k + 2, j) -= p * z;
          }
          H(k, j) -= p * x;
          H(k + 1, j) -= p * y;
        }
        const long last = std::min(n, k + 3);
        for (long i = l; i <= last; ++i) {
          p = x * H(i, k) + y * H(i, k + 1);
          if (notlast) {
            p += z * H(i, k + 2);
            H(i, k + 2) -= p * r;
          }
          H(i, k) -= p;
          H(i, k + 1) -= p * q;
        }
      }
    }
  }
  return out;
}

template <typename R>
std::vector<std::complex<double>> general_eigenvalues_impl(const DenseMatrix& a) {
  Work<R> h(a);
  balance(h);
  reduce_to_hessenberg(h);
  return hessenberg_qr(h);
}

}  // namespace

std::vector<std::complex<double>> general_eigenvalues(const DenseMatrix& a, Precision precision) {
  if (!a.is_square()) throw DimensionError("eigenvalues: matrix is not square");
  if (!a.all_finite()) throw DimensionError("eigenvalues: matrix has non-finite entries");
  return precision == Precision::Double ? general_eigenvalues_impl<double>(a)
                                        : general_eigenvalues_impl<ExtendedReal>(a);
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& a) {
  if (!a.is_square()) throw DimensionError("eigenvalues: matrix is not square");
  const std::size_t n = a.rows();
  DenseMatrix s = a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) s(i, j) = s(j, i);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += s(i, j) * s(i, j);
        if (i != j) off += s(i, j) * s(i, j);
      }
    if (off <= std::numeric_limits<double>::min() ||
        off <= 1e-32 * total) {
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = s(p, q);
        if (apq == 0.0) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
        s(p, q) = 0.0;
        s(q, p) = 0.0;
      }
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = s(i, i);
  return out;
}

}  // namespace rescon
