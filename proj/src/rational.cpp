#include "defzeta/rational.hpp"

#include <sstream>

#include "defzeta/errors.hpp"

namespace defzeta {
namespace qpoly {

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const QPoly& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != 0) return static_cast<int>(i);
  return -1;
}

QPoly add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

QPoly scale(const QPoly& a, const mpq_class& c) {
  QPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  trim(r);
  return r;
}

QPoly derivative(const QPoly& a) {
  QPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<long>(i));
  trim(r);
  return r;
}

void divrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  int db = degree(b);
  if (db < 0) throw std::domain_error("polynomial division by zero");
  r = a;
  trim(r);
  int dr = degree(r);
  q.assign(static_cast<std::size_t>(std::max(0, dr - db + 1)), mpq_class(0));
  mpq_class lead = b[static_cast<std::size_t>(db)];
  for (; dr >= db; dr = degree(r)) {
    mpq_class c = r[static_cast<std::size_t>(dr)] / lead;
    q[static_cast<std::size_t>(dr - db)] = c;
    for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(dr - db + i)] -= c * b[static_cast<std::size_t>(i)];
    r[static_cast<std::size_t>(dr)] = 0;
    trim(r);
  }
  trim(q);
}

QPoly monic(const QPoly& a) {
  int d = degree(a);
  if (d < 0) return {};
  return scale(a, 1 / mpq_class(a[static_cast<std::size_t>(d)]));
}

QPoly gcd(const QPoly& a0, const QPoly& b0) {
  QPoly a = a0, b = b0, q, r;
  trim(a);
  trim(b);
  while (!b.empty()) {
    divrem(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

mpq_class eval(const QPoly& a, const mpq_class& x) {
  mpq_class r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

QPoly shift(const QPoly& a, const mpq_class& s) {
  QPoly r;
  for (std::size_t i = a.size(); i-- > 0;) r = add(mul(r, QPoly{s, 1}), QPoly{a[i]});
  return r;
}

QPoly inflate(const QPoly& a, int k) {
  if (a.empty()) return {};
  QPoly r((a.size() - 1) * static_cast<std::size_t>(k) + 1);
  for (std::size_t i = 0; i < a.size(); ++i) r[i * static_cast<std::size_t>(k)] = a[i];
  return r;
}

std::string to_string(const QPoly& a) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!first) os << " + ";
    os << a[i];
    if (i > 0) os << "*G^" << i;
    first = false;
  }
  return os.str();
}

}  // namespace qpoly

RatFunc::RatFunc(const mpq_class& c) : num_{c}, den_{mpq_class(1)} { qpoly::trim(num_); }

RatFunc::RatFunc(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

void RatFunc::normalize() {
  qpoly::trim(num_);
  qpoly::trim(den_);
  if (den_.empty()) throw std::domain_error("rational function with zero denominator");
  if (num_.empty()) {
    den_ = {1};
    return;
  }
  QPoly g = qpoly::gcd(num_, den_), q, r;
  if (qpoly::degree(g) > 0) {
    qpoly::divrem(num_, g, q, r);
    num_ = q;
    qpoly::divrem(den_, g, q, r);
    den_ = q;
  }
  mpq_class lead = den_.back();
  num_ = qpoly::scale(num_, 1 / lead);
  den_ = qpoly::scale(den_, 1 / lead);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (den_ == o.den_) return RatFunc(qpoly::add(num_, o.num_), den_);
  return RatFunc(qpoly::add(qpoly::mul(num_, o.den_), qpoly::mul(o.num_, den_)), qpoly::mul(den_, o.den_));
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc();
  return RatFunc(qpoly::mul(num_, o.num_), qpoly::mul(den_, o.den_));
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw std::domain_error("rational function division by zero");
  return RatFunc(qpoly::mul(num_, o.den_), qpoly::mul(den_, o.num_));
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

RatFunc RatFunc::derivative() const {
  return RatFunc(qpoly::sub(qpoly::mul(qpoly::derivative(num_), den_), qpoly::mul(num_, qpoly::derivative(den_))),
                 qpoly::mul(den_, den_));
}

std::string RatFunc::to_string() const {
  if (den_ == QPoly{1}) return qpoly::to_string(num_);
  return "(" + qpoly::to_string(num_) + ")/(" + qpoly::to_string(den_) + ")";
}

RatFunc resultant(const std::vector<RatFunc>& f0, const std::vector<RatFunc>& g0) {
  auto deg = [](const std::vector<RatFunc>& a) {
    for (std::size_t i = a.size(); i-- > 0;)
      if (!a[i].is_zero()) return static_cast<int>(i);
    return -1;
  };
  auto rem = [&](std::vector<RatFunc> u, const std::vector<RatFunc>& v) {
    int dv = deg(v);
    for (int i = deg(u); i >= dv; i = deg(u)) {
      RatFunc c = u[static_cast<std::size_t>(i)] / v[static_cast<std::size_t>(dv)];
      for (int j = 0; j <= dv; ++j)
        u[static_cast<std::size_t>(i - dv + j)] = u[static_cast<std::size_t>(i - dv + j)] - c * v[static_cast<std::size_t>(j)];
      u[static_cast<std::size_t>(i)] = RatFunc();
    }
    u.resize(static_cast<std::size_t>(std::max(deg(u) + 1, 0)));
    return u;
  };
  std::vector<RatFunc> A = g0, B;
  int a = deg(A);
  if (a < 0 || !(A[static_cast<std::size_t>(a)] == RatFunc(1)))
    fail(ErrorKind::PreconditionViolation, "resultant needs a monic g");
  A.resize(static_cast<std::size_t>(a) + 1);
  B = rem(f0, A);
  RatFunc result(1);
  for (;;) {
    int b = deg(B);
    if (b < 0) return RatFunc();
    if (b == 0) {
      for (int i = 0; i < a; ++i) result = result * B[0];
      return result;
    }
    auto Rm = rem(A, B);
    int r = deg(Rm);
    if (r < 0) return RatFunc();
    for (int i = 0; i < a - r; ++i) result = result * B[static_cast<std::size_t>(b)];
    if ((a * b) % 2 == 1) result = -result;
    A = std::move(B);
    B = std::move(Rm);
    a = b;
  }
}

}  // namespace defzeta
