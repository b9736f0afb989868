#include "defzeta/zpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace defzeta::zpoly {

namespace {

constexpr std::size_t kSchoolbookCutoff = 24;

std::size_t bit_length(std::size_t v) {
  std::size_t b = 0;
  while (v) {
    ++b;
    v >>= 1;
  }
  return b;
}

std::size_t max_bits(const ZVec& a) {
  std::size_t b = 1;
  for (const auto& c : a) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
  return b;
}

void pack(mpz_class& out, const ZVec& a, std::size_t slot) {
  std::size_t total = a.size() * slot;
  mp_limb_t* d = mpz_limbs_write(out.get_mpz_t(), static_cast<mp_size_t>(total));
  std::fill(d, d + total, mp_limb_t{0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t n = mpz_size(a[i].get_mpz_t());
    const mp_limb_t* s = mpz_limbs_read(a[i].get_mpz_t());
    std::copy(s, s + n, d + i * slot);
  }
  mpz_limbs_finish(out.get_mpz_t(), static_cast<mp_size_t>(total));
}

// Product coefficients are unpacked from slots of `slot` limbs.
ZVec kronecker(const ZVec& a, const ZVec& b, std::size_t count, const mpz_class* M) {
  std::size_t bits = max_bits(a) + max_bits(b) + bit_length(std::min(a.size(), b.size())) + 1;
  std::size_t slot = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
  mpz_class A, B, C;
  pack(A, a, slot);
  if (&a == &b) {
    mpz_mul(C.get_mpz_t(), A.get_mpz_t(), A.get_mpz_t());
  } else {
    pack(B, b, slot);
    mpz_mul(C.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  }
  ZVec out(count);
  const mp_limb_t* d = mpz_limbs_read(C.get_mpz_t());
  std::size_t cs = mpz_size(C.get_mpz_t());
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t start = i * slot;
    if (start >= cs) break;
    std::size_t len = std::min(slot, cs - start);
    while (len > 0 && d[start + len - 1] == 0) --len;
    if (len == 0) continue;
    mpz_t view;
    mpz_roinit_n(view, d + start, static_cast<mp_size_t>(len));
    if (M)
      mpz_mod(out[i].get_mpz_t(), view, M->get_mpz_t());
    else
      mpz_set(out[i].get_mpz_t(), view);
  }
  return out;
}

ZVec schoolbook(const ZVec& a, const ZVec& b, std::size_t count, const mpz_class* M) {
  ZVec out(count);
  for (std::size_t i = 0; i < a.size() && i < count; ++i) {
    if (a[i] == 0) continue;
    std::size_t lim = std::min(b.size(), count - i);
    for (std::size_t j = 0; j < lim; ++j)
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  if (M)
    for (auto& c : out) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), M->get_mpz_t());
  return out;
}

ZVec product(const ZVec& a, const ZVec& b, std::size_t count, const mpz_class* M) {
  if (a.empty() || b.empty() || count == 0) return ZVec(count);
  if (std::min(a.size(), b.size()) < kSchoolbookCutoff) return schoolbook(a, b, count, M);
  // Truncate inputs that cannot contribute to the low `count` coefficients.
  if (a.size() > count || b.size() > count) {
    ZVec at(a.begin(), a.begin() + std::min(a.size(), count));
    ZVec bt(b.begin(), b.begin() + std::min(b.size(), count));
    return kronecker(at, bt, count, M);
  }
  return kronecker(a, b, count, M);
}

}  // namespace

void trim(ZVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void reduce_coeffs(ZVec& a, const mpz_class& M) {
  for (auto& c : a) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
}

ZVec add(const ZVec& a, const ZVec& b, const mpz_class& M) {
  ZVec r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] = a[i];
    if (i < b.size()) r[i] += b[i];
    if (r[i] >= M) r[i] -= M;
  }
  return r;
}

ZVec sub(const ZVec& a, const ZVec& b, const mpz_class& M) {
  ZVec r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] = a[i];
    if (i < b.size()) r[i] -= b[i];
    if (r[i] < 0) r[i] += M;
  }
  return r;
}

ZVec scale(const ZVec& a, const mpz_class& c, const mpz_class& M) {
  ZVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_mul(r[i].get_mpz_t(), a[i].get_mpz_t(), c.get_mpz_t());
    mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), M.get_mpz_t());
  }
  return r;
}

ZVec mul(const ZVec& a, const ZVec& b, const mpz_class& M) {
  if (a.empty() || b.empty()) return {};
  return product(a, b, a.size() + b.size() - 1, &M);
}

ZVec mul_low(const ZVec& a, const ZVec& b, std::size_t n, const mpz_class& M) {
  return product(a, b, n, &M);
}

ZVec mul_exact(const ZVec& a, const ZVec& b) {
  if (a.empty() || b.empty()) return {};
  return product(a, b, a.size() + b.size() - 1, nullptr);
}

ZVec series_inverse(const ZVec& a, std::size_t n, const mpz_class& M) {
  if (n == 0) return {};
  mpz_class inv0;
  if (a.empty() || mpz_invert(inv0.get_mpz_t(), a[0].get_mpz_t(), M.get_mpz_t()) == 0)
    throw std::domain_error("series_inverse: constant term is not invertible");
  ZVec y{inv0};
  std::size_t len = 1;
  while (len < n) {
    std::size_t next = std::min(2 * len, n);
    ZVec at(a.begin(), a.begin() + std::min(a.size(), next));
    ZVec ay = mul_low(at, y, next, M);
    // y <- y (2 - a y)
    for (auto& c : ay) c = M - c;
    ay[0] += 2;
    reduce_coeffs(ay, M);
    y = mul_low(y, ay, next, M);
    len = next;
  }
  return y;
}

mpz_class eval(const ZVec& a, const mpz_class& x, const mpz_class& M) {
  mpz_class r = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    r = r * x + a[i];
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), M.get_mpz_t());
  }
  return r;
}

}  // namespace defzeta::zpoly
