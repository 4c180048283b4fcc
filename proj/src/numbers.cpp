#include "littlewood/numbers.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace littlewood {

namespace {

std::atomic<std::size_t>& cap_storage() {
  static std::atomic<std::size_t> cap = [] {
    std::size_t value = 1'000'000;
    if (const char* env = std::getenv("LITTLEWOOD_DIGIT_CAP")) {
      char* end = nullptr;
      unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && parsed > 0) value = static_cast<std::size_t>(parsed);
    }
    return value;
  }();
  return cap;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt den(const BigRational& x) { return x.get_den(); }

}  // namespace

BigRational make_rational(const BigInt& num, const BigInt& den_) {
  require(den_ != 0, ErrorKind::ZeroDenominator, "rational with zero denominator");
  BigRational x(num, den_);
  x.canonicalize();
  return x;
}

std::string to_string(const BigRational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const BigInt& x) { return x.get_str(); }

BigInt parse_integer(std::string_view text) {
  text = trim(text);
  std::string digits(text);
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  bool ok = !digits.empty();
  for (std::size_t i = 0; i < digits.size() && ok; ++i) {
    char c = digits[i];
    ok = std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && c == '-' && digits.size() > 1);
  }
  if (!ok) fail(ErrorKind::ParseError, "not an integer: '" + std::string(text) + "'");
  if (digits.size() > digit_cap() + 1) fail(ErrorKind::DigitCapExceeded, "integer literal too long");
  return BigInt(digits, 10);
}

BigRational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (auto dot = text.find('.'); dot != std::string_view::npos && slash == std::string_view::npos) {
    // Terminating decimal, read exactly.
    std::string whole(text.substr(0, dot)), frac(text.substr(dot + 1));
    if (frac.empty() || frac.front() == '-' || frac.front() == '+') fail(ErrorKind::ParseError, "bad decimal: '" + std::string(text) + "'");
    bool negative = !whole.empty() && whole.front() == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    BigInt w = parse_integer(whole), f = parse_integer(frac);
    BigInt scale = pow(BigInt(10), frac.size());
    BigInt num = (negative ? -w : w) * scale + f;
    return make_rational(negative ? BigInt(-num) : num, scale);
  }
  if (slash == std::string_view::npos) return BigRational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  BigInt d = parse_integer(text.substr(slash + 1));
  return make_rational(num, d);
}

int sign(const BigInt& x) { return sgn(x); }
int sign(const BigRational& x) { return sgn(x); }

BigInt floor(const BigRational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

BigInt isqrt(const BigInt& x) {
  require(x >= 0, ErrorKind::InvalidArgument, "isqrt of a negative integer");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

bool is_perfect_square(const BigInt& x) { return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0; }

BigInt pow2(std::size_t k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

BigInt pow(const BigInt& base, std::size_t k) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), k);
  return r;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::size_t digit_cap() { return cap_storage().load(); }
void set_digit_cap(std::size_t digits) { cap_storage().store(digits); }

void check_digit_cap(const BigInt& x, const char* what) {
  // sizeinbase may overshoot by one digit; that is fine for a cap.
  if (mpz_sizeinbase(x.get_mpz_t(), 10) > digit_cap()) {
    fail(ErrorKind::DigitCapExceeded, std::string(what) + " exceeds the digit cap");
  }
}

BigInt floor_quadratic(const BigInt& x0, const BigInt& y0, const BigInt& e, const BigInt& z0) {
  require(z0 != 0, ErrorKind::ZeroDenominator, "floor_quadratic with zero denominator");
  BigInt x = x0, y = y0, z = z0;
  if (z < 0) {
    x = -x;
    y = -y;
    z = -z;
  }
  BigInt q;
  if (y == 0) {
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), z.get_mpz_t());
    return q;
  }
  BigInt big_e = y * y * e;
  BigInt f = isqrt(big_e);
  if (y > 0) {
    // sqrt(E) lies strictly inside (f, f+1), so no multiple of z separates x+f from x+sqrt(E).
    BigInt num = x + f;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), z.get_mpz_t());
    return q;
  }
  BigInt num = f - x;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), z.get_mpz_t());
  return -q - 1;
}

SquareSplit split_square(const BigInt& n) {
  require(n > 0, ErrorKind::InvalidArgument, "split_square expects a positive integer");
  if (n.fits_ulong_p()) {
    unsigned long m = n.get_ui();
    unsigned long core = 1, root = 1;
    auto strip = [&](unsigned long p) {
      while (m % (p * p) == 0) {
        m /= p * p;
        root *= p;
      }
      if (m % p == 0) {
        m /= p;
        core *= p;
      }
    };
    strip(2);
    for (unsigned long p = 3; p * p * p <= m; p += 2) strip(p);
    BigInt rest(m);
    BigInt out_core(core), out_root(root);
    if (is_perfect_square(rest)) {
      out_root *= isqrt(rest);
    } else {
      out_core *= rest;
    }
    return {out_core, out_root};
  }
  BigInt m = n, core = 1, root = 1;
  auto strip = [&](const BigInt& p) {
    BigInt p2 = p * p;
    while (mpz_divisible_p(m.get_mpz_t(), p2.get_mpz_t())) {
      m /= p2;
      root *= p;
    }
    if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      core *= p;
    }
  };
  strip(BigInt(2));
  for (BigInt p = 3; p * p * p <= m; p += 2) strip(p);
  if (is_perfect_square(m)) {
    root *= isqrt(m);
  } else {
    core *= m;
  }
  return {core, root};
}

// ---------------------------------------------------------------------------
// DyadicInterval

DyadicInterval::DyadicInterval(BigInt lo_num, BigInt hi_num, std::size_t scale)
    : lo_num_(std::move(lo_num)), hi_num_(std::move(hi_num)), scale_(scale) {
  require(lo_num_ <= hi_num_, ErrorKind::InvalidArgument, "dyadic interval with lo > hi");
}

DyadicInterval DyadicInterval::enclosing(const BigRational& lo, const BigRational& hi, std::size_t scale) {
  BigRational s(pow2(scale));
  BigRational a = lo * s, b = hi * s;
  BigInt lo_num = littlewood::floor(a);
  BigInt hi_num = -littlewood::floor(BigRational(-b));
  return DyadicInterval(lo_num, hi_num, scale);
}

BigRational DyadicInterval::lo() const { return make_rational(lo_num_, pow2(scale_)); }
BigRational DyadicInterval::hi() const { return make_rational(hi_num_, pow2(scale_)); }
BigRational DyadicInterval::width() const { return make_rational(hi_num_ - lo_num_, pow2(scale_)); }

bool DyadicInterval::contains(const BigRational& x) const { return lo() <= x && x <= hi(); }
bool DyadicInterval::contains(const DyadicInterval& other) const {
  return lo() <= other.lo() && other.hi() <= hi();
}
bool DyadicInterval::intersects(const DyadicInterval& other) const {
  return !(hi() < other.lo() || other.hi() < lo());
}

// ---------------------------------------------------------------------------
// QuadraticNumber

BigInt common_field(const QuadraticNumber& a, const QuadraticNumber& b) {
  if (a.d_ == 0) return b.d_;
  if (b.d_ == 0 || a.d_ == b.d_) return a.d_;
  fail(ErrorKind::InvalidArgument, "arithmetic across different quadratic fields");
}

QuadraticNumber::QuadraticNumber(const BigRational& r) : r_(r) {}

QuadraticNumber::QuadraticNumber(BigRational r, BigRational s, BigInt d)
    : r_(std::move(r)), s_(std::move(s)), d_(std::move(d)) {
  require(d_ >= 0 && d_ != 1, ErrorKind::InvalidArgument, "radicand must be 0 or >= 2");
  if (d_ == 0) require(sgn(s_) == 0, ErrorKind::InvalidArgument, "sqrt coefficient on a rational");
}

int QuadraticNumber::sign() const {
  int sr = sgn(r_), ss = sgn(s_);
  if (ss == 0) return sr;
  if (sr == 0 || sr == ss) return ss;
  // r and s*sqrt(d) have opposite signs: compare squares.
  BigRational lhs = r_ * r_;
  BigRational rhs = s_ * s_ * BigRational(d_);
  int c = cmp(rhs, lhs);
  return c > 0 ? ss : sr;
}

BigInt QuadraticNumber::floor() const {
  if (is_rational()) return littlewood::floor(r_);
  BigInt c = lcm(den(r_), den(s_));
  BigRational rc = r_ * BigRational(c), sc = s_ * BigRational(c);
  return floor_quadratic(rc.get_num(), sc.get_num(), d_, c);
}

QuadraticNumber QuadraticNumber::conjugate() const {
  QuadraticNumber out = *this;
  out.s_ = -s_;
  return out;
}

QuadraticNumber QuadraticNumber::abs() const { return sign() < 0 ? -*this : *this; }

QuadraticNumber QuadraticNumber::reciprocal() const {
  BigRational norm = r_ * r_ - s_ * s_ * BigRational(d_);
  require(sgn(norm) != 0, ErrorKind::ZeroDenominator, "reciprocal of zero");
  QuadraticNumber out = *this;
  out.r_ = r_ / norm;
  out.s_ = -s_ / norm;
  return out;
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber out = *this;
  out.r_ = -r_;
  out.s_ = -s_;
  return out;
}

QuadraticNumber operator+(const QuadraticNumber& a, const QuadraticNumber& b) {
  BigInt d = common_field(a, b);
  QuadraticNumber out;
  out.r_ = a.r_ + b.r_;
  out.s_ = a.s_ + b.s_;
  out.d_ = d;
  return out;
}

QuadraticNumber operator-(const QuadraticNumber& a, const QuadraticNumber& b) { return a + (-b); }

QuadraticNumber operator*(const QuadraticNumber& a, const QuadraticNumber& b) {
  BigInt d = common_field(a, b);
  QuadraticNumber out;
  out.r_ = a.r_ * b.r_ + a.s_ * b.s_ * BigRational(d);
  out.s_ = a.r_ * b.s_ + a.s_ * b.r_;
  out.d_ = d;
  return out;
}

QuadraticNumber operator/(const QuadraticNumber& a, const QuadraticNumber& b) {
  return a * b.reciprocal();
}

std::strong_ordering operator<=>(const QuadraticNumber& a, const QuadraticNumber& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool operator==(const QuadraticNumber& a, const QuadraticNumber& b) { return (a - b).sign() == 0; }

DyadicInterval QuadraticNumber::enclose(std::size_t bits) const {
  if (is_rational()) return DyadicInterval::enclosing(r_, r_, bits);
  QuadraticNumber scaled = *this * QuadraticNumber(BigRational(pow2(bits)));
  BigInt f = scaled.floor();
  return DyadicInterval(f, f + 1, bits);
}

DyadicInterval QuadraticNumber::enclose_relative(std::size_t rel_bits) const {
  if (is_rational()) {
    return DyadicInterval::enclosing(r_, r_, rel_bits + 64);
  }
  std::size_t bits = rel_bits + 16;
  for (;;) {
    DyadicInterval box = enclose(bits);
    BigRational lo = box.lo(), hi = box.hi();
    BigRational mag = sgn(lo) > 0 ? lo : (sgn(hi) < 0 ? BigRational(-hi) : BigRational(0));
    if (sgn(mag) > 0 && box.width() <= mag / BigRational(pow2(rel_bits))) return box;
    bits *= 2;
  }
}

double QuadraticNumber::approx() const {
  if (is_rational()) return r_.get_d();
  DyadicInterval box = enclose(96);
  BigRational mid = (box.lo() + box.hi()) / 2;
  return mid.get_d();
}

std::string QuadraticNumber::to_string() const {
  if (is_rational()) return littlewood::to_string(r_);
  return littlewood::to_string(r_) + " + " + littlewood::to_string(s_) + "*sqrt(" + d_.get_str() + ")";
}

// ---------------------------------------------------------------------------
// QuadraticSurd

QuadraticSurd::QuadraticSurd(BigInt P, BigInt D, BigInt Q, BigInt core, BigInt root)
    : P_(std::move(P)), D_(std::move(D)), Q_(std::move(Q)), core_(std::move(core)), root_(std::move(root)) {}

QuadraticSurd QuadraticSurd::canonicalize(const BigInt& P, const BigInt& D, const BigInt& Q) {
  require(Q != 0, ErrorKind::ZeroDenominator, "surd with Q = 0");
  require(D > 0, ErrorKind::InvalidArgument, "surd with D <= 0");
  if (is_perfect_square(D)) fail(ErrorKind::PerfectSquare, "D = " + D.get_str() + " is a perfect square");
  check_digit_cap(D, "surd radicand");
  SquareSplit split = split_square(D);
  return from_number(QuadraticNumber(make_rational(P, Q), make_rational(split.root, Q), split.core));
}

QuadraticSurd QuadraticSurd::from_number(const QuadraticNumber& x) {
  if (x.is_rational()) fail(ErrorKind::PerfectSquare, "value is rational; use BigRational");
  const BigRational& r = x.rational_part();
  const BigRational& s = x.sqrt_coefficient();
  BigRational d(x.radicand());
  BigRational t = s * s * d - r * r;
  BigInt abs_q = lcm(lcm(den(r), den(s)), den(t));
  BigInt q = sgn(s) > 0 ? abs_q : BigInt(-abs_q);
  BigRational qr(q);
  BigRational p = r * qr;
  BigRational big_d = s * s * qr * qr * d;
  BigRational root = s * qr;
  return QuadraticSurd(p.get_num(), big_d.get_num(), q, x.radicand(), root.get_num());
}

QuadraticNumber QuadraticSurd::value() const {
  return QuadraticNumber(make_rational(P_, Q_), make_rational(root_, Q_), core_);
}

BigInt QuadraticSurd::floor() const { return floor_quadratic(P_, BigInt(1), D_, Q_); }

std::strong_ordering QuadraticSurd::compare(const BigRational& r) const {
  return value() <=> QuadraticNumber(r);
}

QuadraticSurd QuadraticSurd::operator+(const BigInt& k) const {
  return from_number(value() + QuadraticNumber(BigRational(k)));
}

QuadraticSurd QuadraticSurd::operator*(const BigInt& n) const {
  return from_number(value() * QuadraticNumber(BigRational(n)));
}

std::string QuadraticSurd::to_string() const {
  return "(" + P_.get_str() + " + sqrt(" + D_.get_str() + "))/" + Q_.get_str();
}

std::strong_ordering surd_compare(const QuadraticSurd& x, const BigRational& r) { return x.compare(r); }
BigInt surd_floor(const QuadraticSurd& x) { return x.floor(); }

DyadicInterval interval_refine(const QuadraticSurd& x, std::size_t bits) {
  require(bits >= 1, ErrorKind::InvalidArgument, "interval_refine needs bits >= 1");
  return x.value().enclose(bits);
}

}  // namespace littlewood
