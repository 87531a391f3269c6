#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "foldlab/quadratic.hpp"

namespace foldlab {

// Sparse multivariate polynomials over k or l in at most 8 variables
// (enough for the rank-8 source lattices in the catalog). A monomial is a
// packed 64-bit key holding one exponent byte per variable, variable 0 in
// the most significant byte, so that graded-lexicographic order is
// (degree, key) integer order. Terms are kept sorted leading-first with no
// zero coefficients; total degree is capped at 255.
class Poly {
public:
    static constexpr int kMaxVars = 8;

    Poly() : nvars_(0), alg_(nullptr) {}
    Poly(int nvars, const QuadraticAlgebra* alg) : nvars_(nvars), alg_(alg) { check_vars(nvars); }

    static Poly zero(int nvars, const QuadraticAlgebra* alg = nullptr) {
        return Poly(nvars, alg);
    }

    static Poly constant(int nvars, QScalar c, const QuadraticAlgebra* alg = nullptr) {
        Poly p(nvars, alg ? alg : c.algebra());
        if (!c.is_zero()) p.terms_.emplace_back(0, std::move(c));
        return p;
    }

    static Poly variable(int nvars, int j, const QuadraticAlgebra* alg = nullptr) {
        check_vars(nvars);
        if (j < 0 || j >= nvars) throw ConfigError("variable index out of range");
        Poly p(nvars, alg);
        p.terms_.emplace_back(key_of_var(j), QScalar(1));
        return p;
    }

    // sum_j coeffs[j] x_j
    static Poly linear(std::span<const QScalar> coeffs, const QuadraticAlgebra* alg = nullptr) {
        Poly p((int)coeffs.size(), alg);
        for (int j = 0; j < (int)coeffs.size(); ++j)
            if (!coeffs[j].is_zero()) p.terms_.emplace_back(key_of_var(j), coeffs[j]);
        std::sort(p.terms_.begin(), p.terms_.end(), term_order);
        if (!alg) p.adopt_algebra();
        return p;
    }

    int nvars() const { return nvars_; }
    const QuadraticAlgebra* algebra() const { return alg_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<std::pair<std::uint64_t, QScalar>>& terms() const { return terms_; }

    static int key_degree(std::uint64_t key) {
        return (int)((key * 0x0101010101010101ULL) >> 56);
    }
    static int key_exponent(std::uint64_t key, int j) { return (int)(key >> (8 * (7 - j)) & 0xff); }
    static std::uint64_t key_of_var(int j) { return 1ULL << (8 * (7 - j)); }

    static std::uint64_t key_of_exponents(std::span<const int> exps) {
        std::uint64_t key = 0;
        int deg = 0;
        for (std::size_t j = 0; j < exps.size(); ++j) {
            if (exps[j] < 0) throw ConfigError("negative exponent");
            deg += exps[j];
            key |= (std::uint64_t)(exps[j] & 0xff) << (8 * (7 - j));
        }
        if (deg > 255) throw ResourceLimitError("monomial degree above 255");
        return key;
    }

    std::vector<int> exponents_of(std::uint64_t key) const {
        std::vector<int> e(nvars_);
        for (int j = 0; j < nvars_; ++j) e[j] = key_exponent(key, j);
        return e;
    }

    // -1 for the zero polynomial
    int degree() const { return terms_.empty() ? -1 : key_degree(terms_.front().first); }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = degree();
        for (const auto& [k, c] : terms_)
            if (key_degree(k) != d) return false;
        return true;
    }

    QScalar coefficient(std::uint64_t key) const {
        for (const auto& [k, c] : terms_)
            if (k == key) return c;
        return QScalar(0);
    }

    // Internal fast path: terms must already be in canonical order with no
    // zeros or duplicates.
    static Poly from_sorted(int nvars, const QuadraticAlgebra* alg,
                            std::vector<std::pair<std::uint64_t, QScalar>> terms) {
        Poly p(nvars, alg);
        p.terms_ = std::move(terms);
        return p;
    }

    // constant term; the augmentation map sends every variable to zero
    QScalar augment() const {
        if (terms_.empty() || terms_.back().first != 0) return QScalar(0);
        return terms_.back().second;
    }

    void add_term(std::uint64_t key, QScalar c) {
        if (key_degree(key) > 255) throw ResourceLimitError("monomial degree above 255");
        if (c.is_zero()) return;
        terms_.emplace_back(key, std::move(c));
        normalize();
    }

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r(*this);
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }

    Poly operator+(const Poly& o) const {
        check_compat(o);
        Poly r(nvars_, alg_ ? alg_ : o.alg_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j >= o.terms_.size() || (i < terms_.size() && term_order(terms_[i], o.terms_[j]))) {
                r.terms_.push_back(terms_[i++]);
            } else if (i >= terms_.size() || term_order(o.terms_[j], terms_[i])) {
                r.terms_.push_back(o.terms_[j++]);
            } else {
                QScalar c = terms_[i].second + o.terms_[j].second;
                if (!c.is_zero()) r.terms_.emplace_back(terms_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        check_compat(o);
        Poly r(nvars_, alg_ ? alg_ : o.alg_);
        if (terms_.empty() || o.terms_.empty()) return r;
        std::unordered_map<std::uint64_t, QScalar> acc;
        acc.reserve(terms_.size() * o.terms_.size());
        for (const auto& [ka, ca] : terms_) {
            for (const auto& [kb, cb] : o.terms_) {
                if (key_degree(ka) + key_degree(kb) > 255)
                    throw ResourceLimitError("product degree above 255");
                auto [it, fresh] = acc.try_emplace(ka + kb, QScalar(0));
                it->second += ca * cb;
            }
        }
        r.terms_.reserve(acc.size());
        for (auto& [k, c] : acc)
            if (!c.is_zero()) r.terms_.emplace_back(k, std::move(c));
        std::sort(r.terms_.begin(), r.terms_.end(), term_order);
        return r;
    }

    Poly operator*(const QScalar& s) const {
        if (s.is_zero()) return Poly(nvars_, alg_);
        Poly r(*this);
        if (!r.alg_) r.alg_ = s.algebra();
        for (auto& [k, c] : r.terms_) c = c * s;
        return r;
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(int e) const {
        if (e < 0) throw ConfigError("negative power");
        Poly r = constant(nvars_, QScalar(1), alg_);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    // Ring homomorphism determined by variable images (all of the same
    // variable count, possibly different from this one).
    Poly substitute(std::span<const Poly> images) const {
        if ((int)images.size() != nvars_)
            throw ConfigError("substitution needs one image per variable");
        int out_vars = images.empty() ? nvars_ : images[0].nvars();
        const QuadraticAlgebra* out_alg = alg_;
        for (const Poly& im : images) {
            if (im.nvars() != out_vars) throw ConfigError("inconsistent image variable counts");
            if (!out_alg) out_alg = im.alg_;
        }
        Poly out = zero(out_vars, out_alg);
        std::unordered_map<int, std::vector<Poly>> powers;  // var -> [im^1, im^2, ...]
        for (const auto& [key, c] : terms_) {
            Poly prod = constant(out_vars, c, out_alg);
            for (int j = 0; j < nvars_ && !prod.is_zero(); ++j) {
                int e = key_exponent(key, j);
                if (e == 0) continue;
                auto& pw = powers[j];
                while ((int)pw.size() < e)
                    pw.push_back(pw.empty() ? images[j] : pw.back() * images[j]);
                prod = prod * pw[e - 1];
            }
            out += prod;
        }
        return out;
    }

    // Substitution by a square matrix over scalars: x_j -> sum_i m[i][j] x_i.
    Poly substitute_linear(const std::vector<std::vector<QScalar>>& m) const {
        if ((int)m.size() != nvars_) throw ConfigError("matrix dimension mismatch");
        std::vector<Poly> images;
        images.reserve(nvars_);
        for (int j = 0; j < nvars_; ++j) {
            if ((int)m[j].size() != nvars_) throw ConfigError("matrix dimension mismatch");
            std::vector<QScalar> col(nvars_);
            for (int i = 0; i < nvars_; ++i) col[i] = m[i][j];
            images.push_back(linear(col, alg_));
        }
        return substitute(images);
    }

    std::string to_string(std::span<const std::string> names) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : terms_) {
            if (!s.empty()) s += " + ";
            std::string mono;
            for (int j = 0; j < nvars_; ++j) {
                int e = key_exponent(k, j);
                if (!e) continue;
                if (!mono.empty()) mono += "*";
                mono += j < (int)names.size() ? names[j] : "x" + std::to_string(j + 1);
                if (e > 1) mono += "^" + std::to_string(e);
            }
            if (mono.empty()) {
                s += c.to_string();
            } else if (c == QScalar(1)) {
                s += mono;
            } else {
                s += "(" + c.to_string() + ")*" + mono;
            }
        }
        return s;
    }

private:
    static void check_vars(int nvars) {
        if (nvars < 0 || nvars > kMaxVars)
            throw ConfigError("polynomials support up to 8 variables");
    }

    void check_compat(const Poly& o) const {
        if (nvars_ != o.nvars_) throw ConfigError("polynomial variable counts differ");
    }

    static bool term_order(const std::pair<std::uint64_t, QScalar>& a,
                           const std::pair<std::uint64_t, QScalar>& b) {
        int da = key_degree(a.first), db = key_degree(b.first);
        if (da != db) return da > db;
        return a.first > b.first;
    }

    void adopt_algebra() {
        for (const auto& [k, c] : terms_)
            if (c.algebra()) {
                alg_ = c.algebra();
                return;
            }
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(), term_order);
        std::vector<std::pair<std::uint64_t, QScalar>> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().first == t.first) {
                out.back().second += t.second;
                if (out.back().second.is_zero()) out.pop_back();
            } else {
                out.push_back(std::move(t));
            }
        }
        terms_ = std::move(out);
    }

    int nvars_;
    const QuadraticAlgebra* alg_;
    std::vector<std::pair<std::uint64_t, QScalar>> terms_;
};

inline Poly operator*(const QScalar& s, const Poly& p) { return p * s; }

// Division of f by a nonzero homogeneous linear form L, exact over the
// fraction field. Horner scheme in the leading variable of L: with
// L = a x_v + R, the quotient satisfies q_{k-1} = (f_k - q_k R)/a. In
// integral mode a successful division is additionally certified to have all
// quotient coefficients in the base ring.
struct LinearDivision {
    bool divisible = false;
    bool integral_ok = true;
    Poly quotient;
    Poly remainder;
};

inline LinearDivision divide_by_linear(const Poly& f, const Poly& lin, Mode mode = Mode::Field,
                                       const BaseRing* ring = nullptr) {
    if (lin.is_zero()) throw DegenerateInputError("division by the zero form");
    if (lin.degree() != 1 || !lin.is_homogeneous())
        throw DegenerateInputError("divisor must be homogeneous of degree 1");
    int nv = f.nvars();
    if (nv != lin.nvars()) throw ConfigError("variable counts differ");

    int v = -1;
    QScalar a;
    Poly rest = Poly::zero(nv, lin.algebra());
    for (const auto& [k, c] : lin.terms()) {
        int var = -1;
        for (int j = 0; j < nv; ++j)
            if (Poly::key_exponent(k, j)) var = j;
        if (v < 0) {
            v = var;
            a = c;
        } else {
            rest.add_term(k, c);
        }
    }
    QScalar ainv = a.inverse();

    // split f into layers by the exponent of x_v; stripping the common
    // x_v-byte from the terms of one layer keeps their canonical order
    int dmax = 0;
    for (const auto& [k, c] : f.terms()) dmax = std::max(dmax, Poly::key_exponent(k, v));
    std::uint64_t vkey = Poly::key_of_var(v);
    std::vector<std::vector<std::pair<std::uint64_t, QScalar>>> layer_terms(dmax + 1);
    for (const auto& [k, c] : f.terms()) {
        int e = Poly::key_exponent(k, v);
        layer_terms[e].emplace_back(k - (std::uint64_t)e * vkey, c);
    }
    std::vector<Poly> layer;
    layer.reserve(dmax + 1);
    for (int e = 0; e <= dmax; ++e)
        layer.push_back(Poly::from_sorted(nv, f.algebra(), std::move(layer_terms[e])));

    LinearDivision out;
    std::vector<std::pair<std::uint64_t, QScalar>> qterms;
    Poly qk = Poly::zero(nv, f.algebra());  // q_d = 0
    for (int k = dmax; k >= 1; --k) {
        Poly qk1 = (layer[k] - qk * rest) * ainv;
        for (const auto& [key, c] : qk1.terms())
            qterms.emplace_back(key + (std::uint64_t)(k - 1) * vkey, c);
        qk = std::move(qk1);
    }
    out.remainder = layer[0] - qk * rest;
    out.divisible = out.remainder.is_zero();
    if (out.divisible) {
        // distinct keys by construction (one v-power per layer)
        std::sort(qterms.begin(), qterms.end(), [](const auto& x, const auto& y) {
            int dx = Poly::key_degree(x.first), dy = Poly::key_degree(y.first);
            return dx != dy ? dx > dy : x.first > y.first;
        });
        out.quotient = Poly::from_sorted(nv, f.algebra(), std::move(qterms));
    } else {
        out.quotient = Poly::zero(nv, f.algebra());
    }
    if (out.divisible && mode == Mode::Integral) {
        const BaseRing* rg = ring;
        if (!rg && f.algebra()) rg = &f.algebra()->ring();
        if (!rg && lin.algebra()) rg = &lin.algebra()->ring();
        if (rg) {
            for (const auto& [key, c] : out.quotient.terms())
                if (!rg->contains(c.y()) || !rg->contains(c.yp())) {
                    out.integral_ok = false;
                    break;
                }
        }
    }
    return out;
}

}  // namespace foldlab
