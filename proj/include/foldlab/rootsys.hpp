#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "foldlab/linalg.hpp"
#include "foldlab/weil.hpp"

namespace foldlab {

struct UVecHash {
    std::size_t operator()(const UVector& u) const { return hash_uvec(u); }
};

using UVecIndex = std::unordered_map<UVector, int, UVecHash>;

// A positive root with its ambient coordinates and its (integer) coordinates
// in the simple-root basis.
struct Root {
    UVector vec;
    std::vector<long> coords;
};

// Partition Delta = Delta^T | Delta_rat | T(Delta_rat) of Definition 3.1(4).
// cls[i] classifies simple root i; partner pairs each rational root with its
// T-image and vice versa.
struct TauPartition {
    enum Class { Invariant = 0, Rational = 1, Image = 2 };
    std::vector<int> invariant;
    std::vector<int> rational;
    std::vector<int> image;  // image[t] = index of T(rational[t])
    std::vector<int> cls;
    std::vector<int> partner;  // -1 for invariant roots
};

// An embedded root datum: simple roots inside an ambient rational vector
// space carrying the standard dot product (equal to B_tau whenever a folded
// space with c2 = -1 is attached). The positive roots are generated at
// construction by reflection closure, which also certifies that the input is
// crystallographic.
class RootDatum {
public:
    // Plain datum over Q^m, no folded structure.
    RootDatum(std::vector<UVector> simples, std::vector<std::string> names)
        : RootDatum(nullptr, std::move(simples), std::move(names)) {}

    RootDatum(std::shared_ptr<const FoldedSpace> space, std::vector<UVector> simples,
              std::vector<std::string> names, std::size_t max_roots = 4096)
        : space_(std::move(space)), simples_(std::move(simples)), names_(std::move(names)) {
        if (simples_.empty()) throw ConfigError("root datum needs at least one simple root");
        dim_ = (int)simples_[0].size();
        if (space_ && space_->rank_k() != dim_)
            throw ConfigError("simple roots do not match the folded space dimension");
        for (const auto& s : simples_)
            if ((int)s.size() != dim_) throw ConfigError("inconsistent simple root dimensions");
        if (names_.empty())
            for (std::size_t i = 0; i < simples_.size(); ++i)
                names_.push_back("a" + std::to_string(i + 1));
        if (names_.size() != simples_.size())
            throw ConfigError("one name per simple root required");
        check_independent();
        build_cartan();
        generate_positive_roots(max_roots);
    }

    int ambient_dim() const { return dim_; }
    int rank() const { return (int)simples_.size(); }
    const std::vector<UVector>& simple_roots() const { return simples_; }
    const std::vector<std::string>& names() const { return names_; }
    const FoldedSpace* space() const { return space_.get(); }
    std::shared_ptr<const FoldedSpace> space_shared() const { return space_; }
    const std::vector<Root>& positive_roots() const { return positive_; }
    const std::vector<std::vector<long>>& cartan() const { return cartan_; }

    Rat bform(const UVector& u, const UVector& v) const {
        if (space_) return space_->b_tau(u, v);
        Rat acc(0);
        for (int i = 0; i < dim_; ++i) acc += u[i] * v[i];
        return acc;
    }

    // alpha^vee(u) = 2 B(alpha,u) / B(alpha,alpha)
    Rat pairing(const UVector& alpha, const UVector& u) const {
        if (is_zero(alpha)) throw DegenerateInputError("pairing against the zero root");
        return 2 * bform(alpha, u) / bform(alpha, alpha);
    }

    UVector reflect(const UVector& alpha, const UVector& u) const {
        Rat c = pairing(alpha, u);
        if (c == 0) return u;
        return uvec_sub(u, uvec_scale(c, alpha));
    }

    UVector reflect_simple(int i, const UVector& u) const { return reflect(simples_[i], u); }

    // Word in product order: w = r_{w[0]} r_{w[1]} ... applied right to left.
    UVector apply_word(std::span<const int> word, UVector u) const {
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            u = reflect_simple(*it, u);
        return u;
    }

    int positive_root_index(const UVector& v) const {
        auto it = pos_index_.find(v);
        return it == pos_index_.end() ? -1 : it->second;
    }

    // Matrix M of T in the simple-root basis: T(a_j) = sum_i M[i][j] a_i.
    // Fails when T does not stabilize the span of Delta.
    Matrix<Rat> tau_matrix_on_lattice() const {
        require_space();
        int r = rank();
        Matrix<Rat> a(dim_, std::vector<Rat>(r));
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < r; ++j) a[i][j] = simples_[j][i];
        Matrix<Rat> m(r, std::vector<Rat>(r));
        for (int j = 0; j < r; ++j) {
            UVector tj = space_->tau_op(simples_[j]);
            std::vector<Rat> b(tj.begin(), tj.end());
            auto sol = solve_linear(a, b);
            if (!sol)
                throw ValidationError("T(" + names_[j] + ") lies outside the root lattice span");
            for (int i = 0; i < r; ++i) m[i][j] = (*sol)[i];
        }
        return m;
    }

    // Definition 3.1 checks; returns the partition of Delta.
    TauPartition validate_folded_rep() const {
        require_space();
        const QuadraticAlgebra& alg = space_->algebra();
        // (2) B coincides with B_tau forces c2 = -1
        if (alg.c2() != -1)
            throw ValidationError("folded representation requires c2 = -1 (B = B_tau)");
        // tau > 0 under the fixed real embedding
        if (QScalar::tau(&alg).sign() <= 0)
            throw ValidationError("the root tau must be positive");
        // (3) T stabilizes the root lattice: integral matrix, unit determinant
        Matrix<Rat> m = tau_matrix_on_lattice();
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j)
                if (!is_integer(m[i][j]))
                    throw ValidationError("T is not integral on the root lattice at entry (" +
                                          names_[i] + "," + names_[j] + ")");
        Rat d = determinant(m);
        if (d != 1 && d != -1)
            throw ValidationError("T has non-unit determinant on the root lattice");
        // (4) partition of Delta
        return partition_delta();
    }

    // Dominant theta in span(Delta) with B(theta, a_i) = 0 exactly for
    // i in theta_set and B(theta, a_i) = B(a_i,a_i)/2 otherwise (sum of
    // fundamental coweights outside Theta), computed over Q.
    UVector dominant_vector(std::span<const int> theta_set) const {
        int r = rank();
        std::vector<bool> in_theta(r, false);
        for (int i : theta_set) {
            if (i < 0 || i >= r) throw ConfigError("theta index out of range");
            in_theta[i] = true;
        }
        Matrix<Rat> gram(r, std::vector<Rat>(r));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) gram[i][j] = bform(simples_[i], simples_[j]);
        std::vector<Rat> rhs(r);
        for (int i = 0; i < r; ++i)
            rhs[i] = in_theta[i] ? Rat(0) : Rat(bform(simples_[i], simples_[i]) / 2);
        auto sol = solve_linear(gram, rhs);
        if (!sol) throw InvariantViolationError("Gram system for theta is singular");
        UVector theta(dim_, Rat(0));
        for (int j = 0; j < r; ++j)
            if ((*sol)[j] != 0) theta = uvec_add(theta, uvec_scale((*sol)[j], simples_[j]));
        for (int i = 0; i < r; ++i) {
            int s = sign_of(bform(theta, simples_[i]));
            if (s != (in_theta[i] ? 0 : 1))
                throw InvariantViolationError("theta fails its defining sign conditions");
        }
        return theta;
    }

private:
    void require_space() const {
        if (!space_) throw ConfigError("operation requires a folded space");
    }

    void check_independent() const {
        Matrix<Rat> m(simples_.size(), std::vector<Rat>(dim_));
        for (std::size_t i = 0; i < simples_.size(); ++i)
            for (int j = 0; j < dim_; ++j) m[i][j] = simples_[i][j];
        if (matrix_rank(std::move(m)) != rank())
            throw ValidationError("simple roots are linearly dependent");
    }

    void build_cartan() {
        int r = rank();
        cartan_.assign(r, std::vector<long>(r));
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) {
                Rat c = pairing(simples_[i], simples_[j]);
                if (!is_integer(c))
                    throw ValidationError("non-crystallographic pairing between " + names_[i] +
                                          " and " + names_[j]);
                long v = c.get_num().get_si();
                if (i == j && v != 2)
                    throw InvariantViolationError("diagonal Cartan entry must be 2");
                if (i != j && v > 0)
                    throw ValidationError("Cartan entry of " + names_[i] + "," + names_[j] +
                                          " is positive; not a simple system");
                cartan_[i][j] = v;
            }
        }
    }

    // Saturate Delta under simple reflections, keeping roots whose
    // simple-root coordinates stay nonnegative.
    void generate_positive_roots(std::size_t max_roots) {
        int r = rank();
        for (int i = 0; i < r; ++i) {
            Root root;
            root.vec = simples_[i];
            root.coords.assign(r, 0);
            root.coords[i] = 1;
            pos_index_.emplace(root.vec, (int)positive_.size());
            positive_.push_back(std::move(root));
        }
        for (std::size_t head = 0; head < positive_.size(); ++head) {
            for (int i = 0; i < r; ++i) {
                Root cur = positive_[head];  // copy: push_back may reallocate
                Rat c = pairing(simples_[i], cur.vec);
                if (!is_integer(c))
                    throw ValidationError("closure produced a non-integral pairing");
                long ci = c.get_num().get_si();
                if (ci == 0) continue;
                std::vector<long> coords = cur.coords;
                coords[i] -= ci;
                bool nonneg = true;
                for (long x : coords)
                    if (x < 0) {
                        nonneg = false;
                        break;
                    }
                if (!nonneg) continue;
                UVector vec = uvec_sub(cur.vec, uvec_scale(Rat(ci), simples_[i]));
                if (pos_index_.contains(vec)) continue;
                if (positive_.size() >= max_roots)
                    throw ResourceLimitError("positive-root closure exceeded the bound");
                pos_index_.emplace(vec, (int)positive_.size());
                positive_.push_back(Root{std::move(vec), std::move(coords)});
            }
        }
        // reduced system: no root is twice another
        for (const Root& root : positive_) {
            if (pos_index_.contains(uvec_scale(Rat(2), root.vec)))
                throw ValidationError("root system is not reduced");
        }
    }

    TauPartition partition_delta() const {
        int r = rank();
        UVecIndex delta_index;
        for (int i = 0; i < r; ++i) delta_index.emplace(simples_[i], i);
        // tau_to[i] = j when T(a_i) = a_j, else -1
        std::vector<int> tau_to(r, -1);
        std::vector<bool> fixed(r, false);
        for (int i = 0; i < r; ++i) {
            UVector t = space_->tau_op(simples_[i]);
            if (t == simples_[i]) {
                fixed[i] = true;
            } else if (auto it = delta_index.find(t); it != delta_index.end()) {
                tau_to[i] = it->second;
            }
        }
        TauPartition part;
        part.cls.assign(r, -1);
        part.partner.assign(r, -1);
        for (int i = 0; i < r; ++i) {
            if (!fixed[i]) continue;
            if (!space_->algebra().split())
                throw ValidationError("T-invariant simple root " + names_[i] +
                                      " outside the split case");
            part.cls[i] = TauPartition::Invariant;
            part.invariant.push_back(i);
        }
        for (int i = 0; i < r; ++i) {
            if (part.cls[i] != -1) continue;
            int j = tau_to[i];
            bool irat = space_->is_tau_rational(simples_[i]);
            if (j < 0) {
                // must be the image of some rational root
                int src = -1;
                for (int s = 0; s < r; ++s)
                    if (tau_to[s] == i) src = s;
                if (src < 0 || !space_->is_tau_rational(simples_[src]))
                    throw ValidationError("simple root " + names_[i] +
                                          " fits no part of the tau-partition");
                continue;  // classified when src is processed
            }
            if (part.cls[j] != -1)
                throw ValidationError("inconsistent tau-pairing at " + names_[i]);
            // decide which end of the pair is the rational representative
            bool jrat = space_->is_tau_rational(simples_[j]) && tau_to[j] == i;
            int rat, img;
            if (irat && (!jrat || i < j)) {
                rat = i;
                img = j;
            } else if (jrat) {
                rat = j;
                img = i;
            } else {
                throw ValidationError("pair {" + names_[i] + "," + names_[j] +
                                      "} has no tau-rational member");
            }
            part.cls[rat] = TauPartition::Rational;
            part.cls[img] = TauPartition::Image;
            part.partner[rat] = img;
            part.partner[img] = rat;
            part.rational.push_back(rat);
            part.image.push_back(img);
        }
        for (int i = 0; i < r; ++i)
            if (part.cls[i] == -1)
                throw ValidationError("simple root " + names_[i] +
                                      " fits no part of the tau-partition");
        return part;
    }

    std::shared_ptr<const FoldedSpace> space_;
    std::vector<UVector> simples_;
    std::vector<std::string> names_;
    int dim_ = 0;
    std::vector<std::vector<long>> cartan_;
    std::vector<Root> positive_;
    UVecIndex pos_index_;
};

}  // namespace foldlab
