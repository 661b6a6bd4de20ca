#include "ck/padic.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace ck {

namespace {

// deques, so references handed out survive later growth
struct PowerTable {
    unsigned p = 0;
    std::deque<mpz_class> pows;
};

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m)
{
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error(ErrorKind::InvalidArgument, "element not invertible modulo p^k");
    return r;
}

void reduce_mod(mpz_class& x, const mpz_class& m) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()); }

} // namespace

const mpz_class& prime_power(unsigned p, int k)
{
    thread_local std::deque<PowerTable> tables;
    if (k < 0)
        throw Error(ErrorKind::InvalidArgument, "negative exponent in prime_power");
    PowerTable* table = nullptr;
    for (auto& t : tables)
        if (t.p == p) {
            table = &t;
            break;
        }
    if (table == nullptr) {
        tables.push_back(PowerTable{p, {mpz_class(1)}});
        table = &tables.back();
    }
    while (static_cast<int>(table->pows.size()) <= k)
        table->pows.push_back(table->pows.back() * p);
    return table->pows[static_cast<std::size_t>(k)];
}

int valuation_of(unsigned p, const mpz_class& n)
{
    if (n == 0)
        throw Error(ErrorKind::InvalidArgument, "valuation of zero");
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p))
        return 0;
    mpz_class tmp;
    mpz_class pp(p);
    return static_cast<int>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

PadicScalar PadicScalar::normalized(unsigned p, mpz_class s, int base_val, int abs_prec)
{
    if (abs_prec <= base_val)
        return zero(p, abs_prec);
    reduce_mod(s, prime_power(p, abs_prec - base_val));
    if (s == 0)
        return zero(p, abs_prec);
    int k = 0;
    if (mpz_divisible_ui_p(s.get_mpz_t(), p)) {
        mpz_class pp(p);
        k = static_cast<int>(mpz_remove(s.get_mpz_t(), s.get_mpz_t(), pp.get_mpz_t()));
    }
    const int v = base_val + k;
    return PadicScalar(p, v, abs_prec - v, std::move(s));
}

PadicScalar PadicScalar::zero(unsigned p, int abs_prec) { return PadicScalar(p, abs_prec, 0, mpz_class(0)); }

PadicScalar PadicScalar::from_integer(unsigned p, const mpz_class& n, int abs_prec)
{
    return normalized(p, n, 0, abs_prec);
}

PadicScalar PadicScalar::from_rational(unsigned p, const mpq_class& q, int abs_prec)
{
    if (q == 0)
        return zero(p, abs_prec);
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    mpz_class pp(p);
    const int vn = static_cast<int>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t()));
    const int vd = static_cast<int>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t()));
    const int v = vn - vd;
    if (abs_prec <= v)
        return zero(p, abs_prec);
    const int r = abs_prec - v;
    const mpz_class& mod = prime_power(p, r);
    mpz_class u = num * inverse_mod(den, mod);
    reduce_mod(u, mod);
    return PadicScalar(p, v, r, std::move(u));
}

PadicScalar PadicScalar::exact_integer(unsigned p, const mpz_class& n, int rel_prec)
{
    if (n == 0)
        return zero(p, rel_prec);
    mpz_class u = n;
    mpz_class pp(p);
    const int v = static_cast<int>(mpz_remove(u.get_mpz_t(), u.get_mpz_t(), pp.get_mpz_t()));
    reduce_mod(u, prime_power(p, rel_prec));
    return PadicScalar(p, v, rel_prec, std::move(u));
}

PadicScalar PadicScalar::exact_rational(unsigned p, const mpq_class& q, int rel_prec)
{
    if (q == 0)
        return zero(p, rel_prec);
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    mpz_class pp(p);
    const int vn = static_cast<int>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t()));
    const int vd = static_cast<int>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t()));
    const mpz_class& mod = prime_power(p, rel_prec);
    mpz_class u = num * inverse_mod(den, mod);
    reduce_mod(u, mod);
    return PadicScalar(p, vn - vd, rel_prec, std::move(u));
}

void PadicScalar::check_same_prime(const PadicScalar& o) const
{
    if (p_ != o.p_)
        throw Error(ErrorKind::InvalidArgument, "mixing p-adic scalars of different primes");
}

Tri PadicScalar::valuation_at_least(int k) const noexcept
{
    if (r_ == 0)
        return v_ >= k ? Tri::True : Tri::Unknown;
    return v_ >= k ? Tri::True : Tri::False;
}

Tri PadicScalar::equals(const PadicScalar& other) const { return (*this - other).is_zero(); }

mpz_class PadicScalar::lift() const
{
    if (r_ == 0)
        return 0;
    if (v_ < 0)
        throw Error(ErrorKind::InvalidArgument, "lift of a non-integral p-adic");
    return u_ * prime_power(p_, v_);
}

mpz_class PadicScalar::lift_symmetric() const
{
    mpz_class x = lift();
    if (precision() <= 0)
        return x;
    const mpz_class& m = prime_power(p_, precision());
    if (2 * x > m)
        x -= m;
    return x;
}

mpq_class PadicScalar::to_rational() const
{
    if (r_ == 0)
        return 0;
    if (v_ >= 0)
        return mpq_class(u_ * prime_power(p_, v_));
    mpq_class q(u_, prime_power(p_, -v_));
    q.canonicalize();
    return q;
}

unsigned PadicScalar::residue() const
{
    if (precision() < 1)
        throw Error(ErrorKind::PrecisionExhausted, "residue of a scalar known to no digits");
    if (v_ < 0)
        throw Error(ErrorKind::InvalidArgument, "residue of a non-integral p-adic");
    if (r_ == 0 || v_ > 0)
        return 0;
    return static_cast<unsigned>(mpz_fdiv_ui(u_.get_mpz_t(), p_));
}

PadicScalar PadicScalar::with_precision(int abs_prec) const
{
    if (abs_prec >= precision())
        return *this;
    if (abs_prec <= v_)
        return zero(p_, abs_prec);
    mpz_class u = u_;
    reduce_mod(u, prime_power(p_, abs_prec - v_));
    return PadicScalar(p_, v_, abs_prec - v_, std::move(u));
}

PadicScalar PadicScalar::padded_to(int abs_prec) const
{
    if (abs_prec <= precision())
        return with_precision(abs_prec);
    if (r_ == 0)
        return zero(p_, abs_prec);
    return PadicScalar(p_, v_, abs_prec - v_, u_);
}

PadicScalar PadicScalar::operator-() const
{
    if (r_ == 0)
        return *this;
    mpz_class u = prime_power(p_, r_) - u_;
    return PadicScalar(p_, v_, r_, std::move(u));
}

PadicScalar& PadicScalar::operator+=(const PadicScalar& o)
{
    check_same_prime(o);
    const int abs_prec = std::min(precision(), o.precision());
    if (o.r_ == 0) {
        *this = with_precision(abs_prec);
        return *this;
    }
    if (r_ == 0) {
        *this = o.with_precision(abs_prec);
        return *this;
    }
    const int vmin = std::min(v_, o.v_);
    if (abs_prec <= vmin) {
        *this = zero(p_, abs_prec);
        return *this;
    }
    mpz_class s;
    if (v_ == vmin && o.v_ == vmin)
        s = u_ + o.u_;
    else if (v_ == vmin)
        s = u_ + o.u_ * prime_power(p_, o.v_ - vmin);
    else
        s = u_ * prime_power(p_, v_ - vmin) + o.u_;
    *this = normalized(p_, std::move(s), vmin, abs_prec);
    return *this;
}

PadicScalar& PadicScalar::operator-=(const PadicScalar& o) { return *this += -o; }

PadicScalar& PadicScalar::operator*=(const PadicScalar& o)
{
    check_same_prime(o);
    if (r_ == 0 || o.r_ == 0) {
        const int abs_prec = std::min(v_ + o.precision(), o.v_ + precision());
        *this = zero(p_, abs_prec);
        return *this;
    }
    v_ += o.v_;
    r_ = std::min(r_, o.r_);
    u_ *= o.u_;
    reduce_mod(u_, prime_power(p_, r_));
    return *this;
}

PadicScalar& PadicScalar::operator/=(const PadicScalar& o)
{
    check_same_prime(o);
    if (o.r_ == 0)
        throw Error(ErrorKind::PrecisionExhausted, "division by a scalar indistinguishable from zero");
    if (r_ == 0) {
        *this = zero(p_, precision() - o.v_);
        return *this;
    }
    v_ -= o.v_;
    r_ = std::min(r_, o.r_);
    const mpz_class& mod = prime_power(p_, r_);
    u_ *= inverse_mod(o.u_, mod);
    reduce_mod(u_, mod);
    return *this;
}

PadicScalar PadicScalar::inverse() const
{
    if (r_ == 0)
        throw Error(ErrorKind::PrecisionExhausted, "inverse of a scalar indistinguishable from zero");
    return PadicScalar(p_, -v_, r_, inverse_mod(u_, prime_power(p_, r_)));
}

PadicScalar PadicScalar::pow(unsigned long e) const
{
    PadicScalar result = exact_integer(p_, 1, std::max(r_, 1));
    if (e == 0)
        return result;
    PadicScalar base = *this;
    bool first = true;
    while (e > 0) {
        if (e & 1UL) {
            if (first) {
                result = base;
                first = false;
            } else {
                result *= base;
            }
        }
        e >>= 1;
        if (e > 0)
            base *= base;
    }
    return result;
}

PadicScalar PadicScalar::scaled(const mpz_class& n) const
{
    if (n == 0)
        return zero(p_, std::max(precision(), 0));
    mpz_class m = n;
    mpz_class pp(p_);
    const int vn = static_cast<int>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t()));
    if (r_ == 0)
        return zero(p_, precision() + vn);
    mpz_class u = u_ * m;
    reduce_mod(u, prime_power(p_, r_));
    return PadicScalar(p_, v_ + vn, r_, std::move(u));
}

PadicScalar PadicScalar::divided(const mpz_class& n) const
{
    if (n == 0)
        throw Error(ErrorKind::InvalidArgument, "division by zero integer");
    mpz_class m = n;
    mpz_class pp(p_);
    const int vn = static_cast<int>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t()));
    if (r_ == 0)
        return zero(p_, precision() - vn);
    const mpz_class& mod = prime_power(p_, r_);
    mpz_class u = u_ * inverse_mod(m, mod);
    reduce_mod(u, mod);
    return PadicScalar(p_, v_ - vn, r_, std::move(u));
}

PadicScalar PadicScalar::shifted(int k) const
{
    PadicScalar r = *this;
    r.v_ += k;
    return r;
}

std::string PadicScalar::to_string() const
{
    std::ostringstream out;
    const unsigned p = p_;
    bool any = false;
    if (r_ > 0) {
        mpz_class u = u_;
        int e = v_;
        while (u != 0) {
            const unsigned long d = mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), p);
            if (d != 0) {
                if (any)
                    out << " + ";
                out << d;
                if (e == 1)
                    out << "*" << p;
                else if (e != 0)
                    out << "*" << p << "^" << e;
                any = true;
            }
            ++e;
        }
    }
    if (any)
        out << " + ";
    out << "O(" << p << "^" << precision() << ")";
    return out.str();
}

} // namespace ck
