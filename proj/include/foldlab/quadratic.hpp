#pragma once

#include <memory>
#include <string>
#include <utility>

#include "foldlab/rational.hpp"

namespace foldlab {

// The quadratic separable algebra l = k[x]/(x^2 - c1 x + c2) with roots
// tau, sigma. Elements are written in the tau-basis {1, tau}. The free term
// c2 and the discriminant D = c1^2 - 4 c2 must be invertible in k.
//
// Split algebras (D a square in k) are always presented in the standard form
// c1 = 0, c2 = -1 with tau = (0,1), and require 2 in k*. Non-split algebras
// require D > 0 so that the real embedding with tau = (c1 + sqrt(D))/2 exists.
class QuadraticAlgebra {
public:
    QuadraticAlgebra(Rat c1, Rat c2, BaseRing ring)
        : c1_(std::move(c1)), c2_(std::move(c2)), ring_(std::move(ring)) {
        disc_ = c1_ * c1_ - 4 * c2_;
        if (!ring_.is_unit(c2_))
            throw ConfigError("free term c2 must be invertible in the base ring");
        if (disc_ == 0 || !ring_.is_unit(disc_))
            throw ConfigError("discriminant must be invertible in the base ring");
        split_ = disc_is_square();
        if (split_) {
            if (c1_ != 0 || c2_ != -1)
                throw ConfigError("split algebra must be presented as x^2 - 1 (c1=0, c2=-1)");
            if (!ring_.is_unit(make_rat(2)))
                throw ConfigError("split algebra requires 2 invertible in the base ring");
        } else if (sign_of(disc_) < 0) {
            throw ConfigError("non-split algebra requires positive discriminant");
        }
    }

    static std::shared_ptr<const QuadraticAlgebra> make(Rat c1, Rat c2, BaseRing ring) {
        return std::make_shared<const QuadraticAlgebra>(std::move(c1), std::move(c2), std::move(ring));
    }

    // l = k x k presented as k[x]/(x^2 - 1).
    static std::shared_ptr<const QuadraticAlgebra> split_over(BaseRing ring) {
        return make(make_rat(0), make_rat(-1), std::move(ring));
    }

    // The golden algebra k[x]/(x^2 - x - 1), tau = (1 + sqrt 5)/2.
    static std::shared_ptr<const QuadraticAlgebra> golden_over(BaseRing ring) {
        return make(make_rat(1), make_rat(-1), std::move(ring));
    }

    const Rat& c1() const { return c1_; }
    const Rat& c2() const { return c2_; }
    const Rat& discriminant() const { return disc_; }
    bool split() const { return split_; }
    const BaseRing& ring() const { return ring_; }

    bool same_as(const QuadraticAlgebra& o) const {
        return this == &o || (c1_ == o.c1_ && c2_ == o.c2_ && ring_ == o.ring_);
    }

    // Exact sign of y + tau*y' under the real embedding. In the split case
    // the convention is the sign of p(y,y') = y + y' (tau := 1).
    int embed_sign(const Rat& y, const Rat& yp) const {
        if (split_) return sign_of(Rat(y + yp));
        // 2(y + tau y') = (2y + c1 y') + y' sqrt(D)
        Rat a = 2 * y + c1_ * yp;
        const Rat& b = yp;
        int sa = sign_of(a), sb = sign_of(b);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 against D b^2
        Rat diff = a * a - disc_ * b * b;
        int sd = sign_of(diff);
        return sd == 0 ? 0 : (sd > 0 ? sa : sb);
    }

private:
    bool disc_is_square() const {
        mpz_class num = disc_.get_num(), den = disc_.get_den();
        if (sgn(num) < 0) return false;
        if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
            return false;
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
        return ring_.contains(make_rat(sn, sd));
    }

    Rat c1_, c2_, disc_;
    BaseRing ring_;
    bool split_ = false;
};

enum class Projection { pr_tau, pr_sigma, p_split };

// Element y + tau*y' of a quadratic algebra, stored as an exact pair. A null
// algebra pointer denotes a plain rational constant (y' must then be zero);
// such constants embed into any algebra, which lets k-linear data share code
// with l-linear data.
class QScalar {
public:
    QScalar() : y_(0), yp_(0), alg_(nullptr) {}
    QScalar(Rat y, Rat yp, const QuadraticAlgebra* alg)
        : y_(std::move(y)), yp_(std::move(yp)), alg_(alg) {
        if (!alg_ && yp_ != 0)
            throw ConfigError("quadratic part requires an algebra context");
    }
    /*implicit*/ QScalar(Rat y) : y_(std::move(y)), yp_(0), alg_(nullptr) {}
    /*implicit*/ QScalar(long y) : y_(y), yp_(0), alg_(nullptr) {}

    static QScalar tau(const QuadraticAlgebra* alg) { return QScalar(make_rat(0), make_rat(1), alg); }
    static QScalar sigma(const QuadraticAlgebra* alg) {
        return QScalar(alg->c1(), make_rat(-1), alg);
    }

    const Rat& y() const { return y_; }
    const Rat& yp() const { return yp_; }
    const QuadraticAlgebra* algebra() const { return alg_; }

    bool is_zero() const { return y_ == 0 && yp_ == 0; }
    bool is_rational() const { return yp_ == 0; }

    bool operator==(const QScalar& o) const { return y_ == o.y_ && yp_ == o.yp_; }
    bool operator!=(const QScalar& o) const { return !(*this == o); }

    QScalar operator-() const { return QScalar(-y_, -yp_, alg_); }

    QScalar operator+(const QScalar& o) const {
        return QScalar(y_ + o.y_, yp_ + o.yp_, resolve(o));
    }
    QScalar operator-(const QScalar& o) const {
        return QScalar(y_ - o.y_, yp_ - o.yp_, resolve(o));
    }

    // (y,y')(z,z') = (yz - c2 y'z', yz' + y'z + c1 y'z')
    QScalar operator*(const QScalar& o) const {
        const QuadraticAlgebra* alg = resolve(o);
        if (yp_ == 0 && o.yp_ == 0) return QScalar(y_ * o.y_, Rat(0), alg);
        Rat cross = yp_ * o.yp_;
        return QScalar(y_ * o.y_ - alg->c2() * cross,
                       y_ * o.yp_ + yp_ * o.y_ + alg->c1() * cross, alg);
    }

    QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
    QScalar& operator-=(const QScalar& o) { return *this = *this - o; }
    QScalar& operator*=(const QScalar& o) { return *this = *this * o; }

    // The involution rho swapping tau and sigma: y + tau y' -> y + sigma y'.
    QScalar conjugate() const {
        if (yp_ == 0) return *this;
        return QScalar(y_ + alg_->c1() * yp_, -yp_, alg_);
    }

    // Field norm a * rho(a), always rational.
    Rat norm() const {
        if (yp_ == 0) return y_ * y_;
        return y_ * y_ + alg_->c1() * y_ * yp_ + alg_->c2() * yp_ * yp_;
    }

    QScalar inverse(Mode mode = Mode::Field) const {
        Rat n = norm();
        if (n == 0) {
            if (is_zero()) throw DivisionByZeroError("inverse of zero");
            throw DivisionByZeroError("inverse of a zero divisor (zero norm)");
        }
        QScalar inv = yp_ == 0 ? QScalar(1 / y_, Rat(0), alg_)
                               : QScalar((y_ + alg_->c1() * yp_) / n, -yp_ / n, alg_);
        if (mode == Mode::Integral && alg_) {
            const BaseRing& ring = alg_->ring();
            if (!ring.contains(inv.y_) || !ring.contains(inv.yp_))
                throw NotInvertibleError("element is not a unit in the integral ring");
        }
        return inv;
    }

    QScalar operator/(const QScalar& o) const { return *this * o.inverse(); }

    int sign() const {
        if (yp_ == 0) return sign_of(y_);
        return alg_->embed_sign(y_, yp_);
    }

    Rat project(Projection kind) const {
        switch (kind) {
            case Projection::pr_tau:
                return y_;
            case Projection::pr_sigma:
                return alg_ ? Rat(y_ + alg_->c1() * yp_) : y_;
            case Projection::p_split:
                if (!alg_ || !alg_->split())
                    throw ConfigError("projection p is defined only on split algebras");
                return y_ + yp_;
        }
        throw ConfigError("unknown projection");
    }

    std::string to_string() const {
        if (yp_ == 0) return rat_to_string(y_);
        return rat_to_string(y_) + "+" + rat_to_string(yp_) + "t";
    }

private:
    const QuadraticAlgebra* resolve(const QScalar& o) const {
        if (alg_ == o.alg_) return alg_;
        if (!alg_) return o.alg_;
        if (!o.alg_) return alg_;
        if (alg_->same_as(*o.alg_)) return alg_;
        throw ConfigError("mismatched quadratic algebras");
    }

    Rat y_, yp_;
    const QuadraticAlgebra* alg_;
};

inline QScalar operator*(const Rat& r, const QScalar& a) { return QScalar(r) * a; }

inline std::size_t hash_qscalar(const QScalar& a) {
    return hash_combine(hash_rat(a.y()), hash_rat(a.yp()));
}

}  // namespace foldlab
