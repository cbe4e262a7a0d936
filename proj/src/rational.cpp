#include "csh/rational.hpp"

#include <gmpxx.h>

#include <cctype>
#include <limits>

namespace csh {

struct BigRational {
    mpq_class q;

    static mpq_class of(const Rational& r) {
        if (r.big_) return r.big_->q;
        mpz_class n, d;
        mpz_set_si(n.get_mpz_t(), r.num_);
        mpz_set_si(d.get_mpz_t(), r.den_);
        mpq_class q(n, d);
        return q;
    }

    // canonical form: small whenever both parts fit
    static Rational make(mpq_class q) {
        q.canonicalize();
        Rational r;
        if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() &&
            q.get_num() != std::numeric_limits<long>::min()) {
            r.num_ = q.get_num().get_si();
            r.den_ = q.get_den().get_si();
            return r;
        }
        r.num_ = 0;
        r.den_ = 1;
        r.big_ = std::make_shared<const BigRational>(BigRational{std::move(q)});
        return r;
    }
};

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

mpz_class mpz_of(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_class hi, lo;
    mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(u >> 64));
    mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(u & ~std::uint64_t(0)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational Rational::from128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n > kMax || n < -kMax || d > kMax) return BigRational::make(mpq_class(mpz_of(n), mpz_of(d)));
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

Rational::Rational(std::int64_t n, std::int64_t d) { *this = from128(n, d); }

std::int64_t Rational::num() const {
    if (big_) throw OverflowError("numerator exceeds 64 bits");
    return num_;
}

std::int64_t Rational::den() const {
    if (big_) throw OverflowError("denominator exceeds 64 bits");
    return den_;
}

std::string Rational::num_str() const { return big_ ? big_->q.get_num().get_str() : std::to_string(num_); }
std::string Rational::den_str() const { return big_ ? big_->q.get_den().get_str() : std::to_string(den_); }

bool Rational::is_integer() const { return big_ ? big_->q.get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(big_->q);
    return (num_ > 0) - (num_ < 0);
}

Rational Rational::operator-() const {
    if (big_) return BigRational::make(-big_->q);
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (big_ || o.big_) return *this = BigRational::make(BigRational::of(*this) + BigRational::of(o));
    if (den_ == o.den_) return *this = from128(__int128(num_) + o.num_, den_);
    return *this = from128(__int128(num_) * o.den_ + __int128(o.num_) * den_, __int128(den_) * o.den_);
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    if (big_ || o.big_) return *this = BigRational::make(BigRational::of(*this) * BigRational::of(o));
    return *this = from128(__int128(num_) * o.num_, __int128(den_) * o.den_);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational: division by zero");
    if (big_ || o.big_) return *this = BigRational::make(BigRational::of(*this) / BigRational::of(o));
    return *this = from128(__int128(num_) * o.den_, __int128(den_) * o.num_);
}

bool operator==(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) {
        if (!a.big_ || !b.big_) return false;  // canonical forms differ
        return a.big_->q == b.big_->q;
    }
    return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) {
        int c = cmp(BigRational::of(a), BigRational::of(b));
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    __int128 l = __int128(a.num_) * b.den_;
    __int128 r = __int128(b.num_) * a.den_;
    return l <=> r;
}

std::int64_t Rational::floor() const {
    if (big_) {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), big_->q.get_num_mpz_t(), big_->q.get_den_mpz_t());
        if (!f.fits_slong_p()) throw OverflowError("floor exceeds 64 bits");
        return f.get_si();
    }
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::int64_t Rational::ceil() const {
    if (big_) return -(-*this).floor();
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

std::string Rational::str() const {
    if (is_integer()) return num_str();
    return num_str() + "/" + den_str();
}

Rational Rational::parse(const std::string& s) {
    std::size_t i = 0;
    auto read_int = [&](bool allow_sign) -> std::string {
        std::string out;
        if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) {
            if (s[i] == '-') out += '-';
            ++i;
        }
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) out += s[i++];
        if (i == start) throw ParseError("expected digit", i);
        return out;
    };
    if (s.empty()) throw ParseError("empty rational", 0);
    std::string n = read_int(true);
    std::string d = "1";
    if (i < s.size() && s[i] == '/') {
        ++i;
        std::size_t at = i;
        d = read_int(false);
        if (mpz_class(d) == 0) throw ParseError("zero denominator", at);
    }
    if (i != s.size()) throw ParseError("unexpected character '" + std::string(1, s[i]) + "'", i);
    return BigRational::make(mpq_class(mpz_class(n), mpz_class(d)));
}

}  // namespace csh
