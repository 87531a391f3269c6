#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "foldlab/quadratic.hpp"

namespace foldlab {

// Vector over the base ring; for a Weil restriction U = R_{l/k} U' of rank n
// this is the flat list (y_1, y_1', ..., y_n, y_n') of 2n coordinates.
using UVector = std::vector<Rat>;

// Vector over l: the element u_l of U', n quadratic-algebra coordinates.
using LVector = std::vector<QScalar>;

inline bool is_zero(const UVector& u) {
    for (const Rat& r : u)
        if (r != 0) return false;
    return true;
}

inline bool is_zero_l(const LVector& u) {
    for (const QScalar& x : u)
        if (!x.is_zero()) return false;
    return true;
}

inline UVector uvec_add(const UVector& a, const UVector& b) {
    UVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline UVector uvec_sub(const UVector& a, const UVector& b) {
    UVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline UVector uvec_scale(const Rat& c, const UVector& a) {
    UVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline std::size_t hash_uvec(const UVector& u) {
    std::size_t h = u.size();
    for (const Rat& r : u) h = hash_combine(h, hash_rat(r));
    return h;
}

inline std::size_t hash_lvec(const LVector& u) {
    std::size_t h = u.size();
    for (const QScalar& x : u) h = hash_combine(h, hash_qscalar(x));
    return h;
}

// A free module U' of rank n over l together with its Weil restriction U of
// rank 2n over k.
class FoldedSpace {
public:
    FoldedSpace(int n, std::shared_ptr<const QuadraticAlgebra> alg)
        : n_(n), alg_(std::move(alg)) {
        if (n_ < 1) throw ConfigError("folded space needs rank >= 1");
    }

    int rank_l() const { return n_; }
    int rank_k() const { return 2 * n_; }
    const QuadraticAlgebra& algebra() const { return *alg_; }
    const QuadraticAlgebra* algebra_ptr() const { return alg_.get(); }
    std::shared_ptr<const QuadraticAlgebra> algebra_shared() const { return alg_; }

    void check_dim(const UVector& u) const {
        if ((int)u.size() != 2 * n_) throw ConfigError("U-vector has wrong dimension");
    }

    // The tau-operator T: coordinatewise (y, y') -> (-c2 y', y + c1 y').
    // Satisfies (T u)_l = tau * u_l.
    UVector tau_op(const UVector& u) const {
        check_dim(u);
        UVector r(u.size());
        const Rat& c1 = alg_->c1();
        const Rat& c2 = alg_->c2();
        for (int i = 0; i < n_; ++i) {
            r[2 * i] = -c2 * u[2 * i + 1];
            r[2 * i + 1] = u[2 * i] + c1 * u[2 * i + 1];
        }
        return r;
    }

    // Coordinatewise involution rho on U.
    UVector conjugate(const UVector& u) const {
        check_dim(u);
        UVector r(u.size());
        const Rat& c1 = alg_->c1();
        for (int i = 0; i < n_; ++i) {
            r[2 * i] = u[2 * i] + c1 * u[2 * i + 1];
            r[2 * i + 1] = -u[2 * i + 1];
        }
        return r;
    }

    // B_tau(u,v) = pr_tau(u_l . v_l) = sum_i (y_i z_i - c2 y_i' z_i').
    Rat b_tau(const UVector& u, const UVector& v) const {
        check_dim(u);
        check_dim(v);
        Rat acc(0);
        const Rat& c2 = alg_->c2();
        for (int i = 0; i < n_; ++i)
            acc += u[2 * i] * v[2 * i] - c2 * u[2 * i + 1] * v[2 * i + 1];
        return acc;
    }

    // B_sigma(u,v) = pr_sigma(u_l . v_l).
    Rat b_sigma(const UVector& u, const UVector& v) const {
        QScalar prod = dot_l(to_l(u), to_l(v));
        return prod.project(Projection::pr_sigma);
    }

    // Repackage the 2n base coordinates as n quadratic-algebra coordinates.
    // Under the isomorphism pi_tau: U' ~ U_tau this is the coordinate
    // expression of the projection pi_tau(u).
    LVector to_l(const UVector& u) const {
        check_dim(u);
        LVector r;
        r.reserve(n_);
        for (int i = 0; i < n_; ++i)
            r.emplace_back(u[2 * i], u[2 * i + 1], alg_.get());
        return r;
    }

    UVector from_l(const LVector& u) const {
        if ((int)u.size() != n_) throw ConfigError("L-vector has wrong dimension");
        UVector r(2 * n_);
        for (int i = 0; i < n_; ++i) {
            r[2 * i] = u[i].y();
            r[2 * i + 1] = u[i].yp();
        }
        return r;
    }

    QScalar dot_l(const LVector& u, const LVector& v) const {
        if (u.size() != v.size()) throw ConfigError("L-vector dimension mismatch");
        QScalar acc;
        for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
        return acc;
    }

    // u is tau-rational iff (u_l . u_l) lies in k. Zero is rejected: the
    // definition applies to nonzero vectors only.
    bool is_tau_rational(const UVector& u) const {
        if (is_zero(u)) throw DegenerateInputError("tau-rationality of the zero vector");
        LVector ul = to_l(u);
        return dot_l(ul, ul).is_rational();
    }

    // Eigenspace decomposition. Non-split: over l per the eigenspace lemma,
    // z = (-sigma a, a) + (-tau b, b) with a = (x + tau x')/(tau - sigma),
    // b = (x + sigma x')/(sigma - tau). Split: the decomposition over k
    // obtained by projecting along p (the remark on split projections),
    // slot (y, y') = a (1,1) + b (1,-1) with a = (y+y')/2, b = (y-y')/2,
    // so that b vanishes exactly on T-invariant vectors. Diagnostic; always
    // over the fraction field.
    std::pair<LVector, LVector> eigen_split(const UVector& z) const {
        check_dim(z);
        const QuadraticAlgebra* a = alg_.get();
        LVector apart, bpart;
        apart.reserve(n_);
        bpart.reserve(n_);
        if (a->split()) {
            for (int i = 0; i < n_; ++i) {
                apart.emplace_back((z[2 * i] + z[2 * i + 1]) / 2, Rat(0), a);
                bpart.emplace_back((z[2 * i] - z[2 * i + 1]) / 2, Rat(0), a);
            }
            return {apart, bpart};
        }
        QScalar tau = QScalar::tau(a), sigma = QScalar::sigma(a);
        QScalar inv_ts = (tau - sigma).inverse();
        for (int i = 0; i < n_; ++i) {
            QScalar x(z[2 * i], Rat(0), a), xp(z[2 * i + 1], Rat(0), a);
            apart.push_back(inv_ts * (x + tau * xp));
            bpart.push_back(-(inv_ts * (x + sigma * xp)));
        }
        return {apart, bpart};
    }

    // Inverse of eigen_split: non-split x = -sigma a - tau b, x' = a + b per
    // slot; split (y, y') = (a + b, a - b).
    std::pair<LVector, LVector> eigen_reconstruct(const LVector& apart,
                                                  const LVector& bpart) const {
        const QuadraticAlgebra* a = alg_.get();
        LVector x(n_), xp(n_);
        if (a->split()) {
            for (int i = 0; i < n_; ++i) {
                x[i] = apart[i] + bpart[i];
                xp[i] = apart[i] - bpart[i];
            }
            return {x, xp};
        }
        QScalar tau = QScalar::tau(a), sigma = QScalar::sigma(a);
        for (int i = 0; i < n_; ++i) {
            x[i] = -(sigma * apart[i]) - tau * bpart[i];
            xp[i] = apart[i] + bpart[i];
        }
        return {x, xp};
    }

private:
    int n_;
    std::shared_ptr<const QuadraticAlgebra> alg_;
};

}  // namespace foldlab
