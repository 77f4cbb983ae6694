#include "cuspsum/intseries.hpp"

#include <gmp.h>
#include <omp.h>

#include <algorithm>
#include <cstring>
#include <vector>

#include "cuspsum/errors.hpp"

namespace cuspsum {

IntSeries series_one(long order) {
  IntSeries r(order);
  r[0] = 1;
  return r;
}

IntSeries series_add(const IntSeries& a, const IntSeries& b) {
  long n = std::min(a.order, b.order);
  IntSeries r(n);
  for (long i = 0; i <= n; ++i) r[i] = a[i] + b[i];
  return r;
}

IntSeries series_sub(const IntSeries& a, const IntSeries& b) {
  long n = std::min(a.order, b.order);
  IntSeries r(n);
  for (long i = 0; i <= n; ++i) r[i] = a[i] - b[i];
  return r;
}

IntSeries series_scale(const IntSeries& a, const mpz_class& s) {
  IntSeries r(a.order);
  for (long i = 0; i <= a.order; ++i) r[i] = a[i] * s;
  return r;
}

IntSeries series_shift(const IntSeries& a, long e) {
  IntSeries r(a.order);
  for (long i = e; i <= a.order; ++i) r[i] = a[i - e];
  return r;
}

long series_nnz(const IntSeries& a) {
  long n = 0;
  for (long i = 0; i <= a.order; ++i)
    if (sgn(a[i]) != 0) ++n;
  return n;
}

// ----------------------------------------------------------------------
// multiply kernels

namespace reference {

IntSeries mul_schoolbook(const IntSeries& a, const IntSeries& b) {
  long n = std::min(a.order, b.order);
  IntSeries r(n);
  for (long i = 0; i <= n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (long j = 0; i + j <= n; ++j) {
      if (sgn(b[j]) == 0) continue;
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return r;
}

}  // namespace reference

static IntSeries mul_schoolbook_omp(const IntSeries& a, const IntSeries& b) {
  long n = std::min(a.order, b.order);
  IntSeries r(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (long k = 0; k <= n; ++k) {
    long lo = std::max(0L, k - b.order);
    for (long i = lo; i <= std::min(k, a.order); ++i) {
      if (sgn(a[i]) == 0 || sgn(b[k - i]) == 0) continue;
      mpz_addmul(r[k].get_mpz_t(), a[i].get_mpz_t(), b[k - i].get_mpz_t());
    }
  }
  return r;
}

struct SparseView {
  std::vector<long> idx;
  std::vector<const mpz_class*> val;
};

static SparseView sparse_of(const IntSeries& a) {
  SparseView v;
  for (long i = 0; i <= a.order; ++i)
    if (sgn(a[i]) != 0) {
      v.idx.push_back(i);
      v.val.push_back(&a[i]);
    }
  return v;
}

static size_t max_bits(const IntSeries& a) {
  size_t m = 0;
  for (long i = 0; i <= a.order; ++i)
    if (sgn(a[i]) != 0) m = std::max(m, mpz_sizeinbase(a[i].get_mpz_t(), 2));
  return m;
}

static size_t bits_of_count(long n) {
  size_t b = 0;
  while (n > 0) {
    ++b;
    n >>= 1;
  }
  return b;
}

// Pair loop over the nonzero supports; int64 accumulation when the
// coefficient bound proves no overflow, exact big integers otherwise.
static IntSeries mul_sparse_pairs(const IntSeries& a, const IntSeries& b, const SparseView& sa,
                                  const SparseView& sb, size_t ba, size_t bb) {
  long n = std::min(a.order, b.order);
  IntSeries r(n);
  size_t cnt = bits_of_count(std::min<long>(sa.idx.size(), sb.idx.size()));
  if (ba + bb + cnt + 1 <= 62) {
    std::vector<long long> acc(static_cast<size_t>(n) + 1, 0);
    for (size_t i = 0; i < sa.idx.size(); ++i) {
      long ei = sa.idx[i];
      if (ei > n) break;
      long long vi = mpz_get_si(sa.val[i]->get_mpz_t());
      for (size_t j = 0; j < sb.idx.size(); ++j) {
        long e = ei + sb.idx[j];
        if (e > n) break;
        acc[static_cast<size_t>(e)] += vi * mpz_get_si(sb.val[j]->get_mpz_t());
      }
    }
    for (long i = 0; i <= n; ++i)
      if (acc[static_cast<size_t>(i)]) r[i] = static_cast<long>(acc[static_cast<size_t>(i)]);
    return r;
  }
  for (size_t i = 0; i < sa.idx.size(); ++i) {
    long ei = sa.idx[i];
    if (ei > n) break;
    for (size_t j = 0; j < sb.idx.size(); ++j) {
      long e = ei + sb.idx[j];
      if (e > n) break;
      mpz_addmul(r[e].get_mpz_t(), sa.val[i]->get_mpz_t(), sb.val[j]->get_mpz_t());
    }
  }
  return r;
}

/*
 * Kronecker substitution: evaluate both factors at q = 2^{8B}, multiply
 * once with GMP, then read the product coefficients back out of the
 * byte windows.  Signed series are split into positive and negative
 * parts so every packed integer is nonnegative; the window width
 *
 *   bits = bits(max|a_i|) + bits(max|b_j|) + bits(min(nnz_a, nnz_b)) + 2
 *
 * makes every window of each of the four partial products fit without
 * carry into the next window.
 */
static void ks_pack_signed(const IntSeries& a, size_t B, std::vector<unsigned char>& pos,
                           std::vector<unsigned char>& neg, bool& has_neg) {
  size_t len = (static_cast<size_t>(a.order) + 1) * B;
  pos.assign(len, 0);
  neg.assign(len, 0);
  has_neg = false;
  for (long i = 0; i <= a.order; ++i) {
    int s = sgn(a[i]);
    if (s == 0) continue;
    unsigned char* dst = (s > 0 ? pos.data() : neg.data()) + static_cast<size_t>(i) * B;
    if (s < 0) has_neg = true;
    // mpz_export writes |value| little-endian; sign handled by the split.
    mpz_export(dst, nullptr, -1, 1, 0, 0, a[i].get_mpz_t());
  }
}

static mpz_class ks_import_all(const std::vector<unsigned char>& buf) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), buf.size(), -1, 1, 0, 0, buf.data());
  return z;
}

static void ks_accumulate(IntSeries& r, const mpz_class& prod, size_t B, long nwin, int sign) {
  if (sgn(prod) == 0) return;
  std::vector<unsigned char> buf((static_cast<size_t>(nwin) + 1) * B, 0);
  size_t written = 0;
  mpz_export(buf.data(), &written, -1, 1, 0, 0, prod.get_mpz_t());
  long kmax = std::min<long>(r.order, nwin);
#pragma omp parallel for schedule(static)
  for (long k = 0; k <= kmax; ++k) {
    mpz_class w;
    mpz_import(w.get_mpz_t(), B, -1, 1, 0, 0, buf.data() + static_cast<size_t>(k) * B);
    if (sign > 0)
      r[k] += w;
    else
      r[k] -= w;
  }
}

static IntSeries mul_kronecker(const IntSeries& a, const IntSeries& b, size_t ba, size_t bb,
                               long nnz_min) {
  size_t bits = ba + bb + bits_of_count(nnz_min) + 2;
  size_t B = (bits + 7) / 8;
  std::vector<unsigned char> ap, an, bp, bn;
  bool aneg = false, bneg = false;
  ks_pack_signed(a, B, ap, an, aneg);
  ks_pack_signed(b, B, bp, bn, bneg);

  mpz_class A = ks_import_all(ap), B1 = ks_import_all(bp);
  mpz_class An, Bn;
  if (aneg) An = ks_import_all(an);
  if (bneg) Bn = ks_import_all(bn);
  ap.clear();
  an.clear();
  bp.clear();
  bn.clear();

  long n = std::min(a.order, b.order);
  long nwin = a.order + b.order;
  IntSeries r(n);
  ks_accumulate(r, A * B1, B, nwin, +1);
  if (aneg && bneg) ks_accumulate(r, An * Bn, B, nwin, +1);
  if (aneg) ks_accumulate(r, An * B1, B, nwin, -1);
  if (bneg) ks_accumulate(r, A * Bn, B, nwin, -1);
  return r;
}

IntSeries series_mul(const IntSeries& a, const IntSeries& b) {
  long n = std::min(a.order, b.order);
  SparseView sa = sparse_of(a), sb = sparse_of(b);
  if (sa.idx.empty() || sb.idx.empty()) return IntSeries(n);
  double pairs = static_cast<double>(sa.idx.size()) * static_cast<double>(sb.idx.size());
  size_t ba = max_bits(a), bb = max_bits(b);
  if (pairs <= 2e7) return mul_sparse_pairs(a, b, sa, sb, ba, bb);
  if (n <= 2048) return mul_schoolbook_omp(a, b);
  return mul_kronecker(a, b, ba, bb, std::min<long>(sa.idx.size(), sb.idx.size()));
}

IntSeries series_pow(const IntSeries& a, unsigned e) {
  if (e == 0) throw usage_error("series_pow: exponent must be >= 1");
  unsigned msb = 31 - static_cast<unsigned>(__builtin_clz(e));
  IntSeries r = a;
  for (int bit = static_cast<int>(msb) - 1; bit >= 0; --bit) {
    r = series_mul(r, r);
    if (e & (1u << bit)) r = series_mul(r, a);
  }
  return r;
}

}  // namespace cuspsum
