#pragma once

#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "foldlab/rootsys.hpp"

namespace foldlab {

struct LVecHash {
    std::size_t operator()(const LVector& u) const { return hash_lvec(u); }
};

// A folded root together with its coordinates in the Delta_tau basis.
struct FoldedRoot {
    LVector vec;
    std::vector<QScalar> coords;
};

// The twisted folding of a validated folded representation: folded simple
// roots Delta_tau, their lifted reflections in W, the folded root system
// Phi_tau = W_tau(Delta_tau) and the order of W_tau.
//
// Folded vectors are stored in U'-coordinates: in the non-split case the
// image pi_tau(u) is represented by u_l itself (pi_tau is an isomorphism
// U' ~ U_tau), in the split case by the k-vector with entries p(x_i)/2,
// matching the worked examples. On these coordinates every relevant bilinear
// form is a positive multiple of the plain dot product, so reflections use
// the dot product directly in both modes.
class FoldingContext {
public:
    FoldingContext(std::shared_ptr<const RootDatum> datum, TauPartition partition,
                   std::size_t max_roots = 4096)
        : datum_(std::move(datum)), part_(std::move(partition)) {
        if (!datum_->space()) throw ConfigError("folding requires a folded space");
        space_ = datum_->space_shared();
        split_ = space_->algebra().split();
        build_delta_tau();
        generate_phi_tau(max_roots);
        enumerate_w_tau();
    }

    const RootDatum& datum() const { return *datum_; }
    std::shared_ptr<const RootDatum> datum_shared() const { return datum_; }
    const TauPartition& partition() const { return part_; }
    const QuadraticAlgebra* algebra() const { return space_->algebra_ptr(); }
    bool split() const { return split_; }

    int folded_rank() const { return (int)delta_tau_.size(); }
    const std::vector<LVector>& delta_tau() const { return delta_tau_; }
    const std::vector<std::string>& folded_names() const { return folded_names_; }
    // source simple index represented by folded simple root j
    const std::vector<int>& rep_source() const { return rep_source_; }
    // product-order words in source simple reflections lifting each folded
    // generator: r_{T alpha} r_alpha for rational alpha, r_alpha for invariant
    const std::vector<std::vector<int>>& lift_words() const { return lift_words_; }

    // folded position of a source simple root (rational or invariant: its own
    // slot; image root: the slot of its rational partner)
    int folded_position(int source_idx) const { return folded_pos_[source_idx]; }
    // tau-power picked up by the fold map on this source variable
    int tau_power(int source_idx) const {
        return (!split_ && part_.cls[source_idx] == TauPartition::Image) ? 1 : 0;
    }

    // The fold map on vectors: U -> stored folded coordinates.
    LVector fold(const UVector& u) const {
        if (!split_) return space_->to_l(u);
        LVector r;
        r.reserve(space_->rank_l());
        const QuadraticAlgebra* a = space_->algebra_ptr();
        for (int i = 0; i < space_->rank_l(); ++i)
            r.emplace_back((u[2 * i] + u[2 * i + 1]) / 2, Rat(0), a);
        return r;
    }

    QScalar dot(const LVector& u, const LVector& v) const { return space_->dot_l(u, v); }

    // 2 <beta, v> / <beta, beta>
    QScalar fold_pairing(const LVector& beta, const LVector& v) const {
        return QScalar(2) * dot(beta, v) * dot(beta, beta).inverse();
    }

    LVector fold_reflect(const LVector& beta, const LVector& v) const {
        QScalar c = fold_pairing(beta, v);
        if (c.is_zero()) return v;
        LVector r(v);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - c * beta[i];
        return r;
    }

    LVector fold_reflect_simple(int j, const LVector& v) const {
        return fold_reflect(delta_tau_[j], v);
    }

    // Word in product order over folded generators, applied right to left.
    LVector apply_folded_word(std::span<const int> word, LVector v) const {
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            v = fold_reflect_simple(*it, v);
        return v;
    }

    // The lifted reflection of folded generator j applied on U.
    UVector apply_lift(int j, UVector u) const {
        const auto& w = lift_words_[j];
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            u = datum_->reflect_simple(*it, u);
        return u;
    }

    const std::vector<FoldedRoot>& phi_tau() const { return phi_tau_; }
    const std::vector<int>& phi_tau_positive() const { return positive_; }
    int root_index(const LVector& v) const {
        auto it = root_index_.find(v);
        return it == root_index_.end() ? -1 : it->second;
    }
    std::size_t w_tau_order() const { return w_tau_order_; }

    // 2n x 2n matrix of the lifted generator j over k.
    Matrix<Rat> lift_matrix(int j) const {
        int m = datum_->ambient_dim();
        Matrix<Rat> mat(m, std::vector<Rat>(m));
        for (int col = 0; col < m; ++col) {
            UVector e(m, Rat(0));
            e[col] = make_rat(1);
            UVector img = apply_lift(j, std::move(e));
            for (int row = 0; row < m; ++row) mat[row][col] = img[row];
        }
        return mat;
    }

    Matrix<Rat> tau_matrix_ambient() const {
        int m = datum_->ambient_dim();
        Matrix<Rat> mat(m, std::vector<Rat>(m));
        for (int col = 0; col < m; ++col) {
            UVector e(m, Rat(0));
            e[col] = make_rat(1);
            UVector img = space_->tau_op(e);
            for (int row = 0; row < m; ++row) mat[row][col] = img[row];
        }
        return mat;
    }

private:
    void build_delta_tau() {
        for (int i = 0; i < datum_->rank(); ++i) {
            if (part_.cls[i] == TauPartition::Rational || part_.cls[i] == TauPartition::Invariant)
                rep_source_.push_back(i);
        }
        folded_pos_.assign(datum_->rank(), -1);
        for (std::size_t j = 0; j < rep_source_.size(); ++j) {
            int r = rep_source_[j];
            folded_pos_[r] = (int)j;
            delta_tau_.push_back(fold(datum_->simple_roots()[r]));
            folded_names_.push_back("X" + std::to_string(j + 1));
            if (part_.cls[r] == TauPartition::Rational) {
                folded_pos_[part_.partner[r]] = (int)j;
                lift_words_.push_back({part_.partner[r], r});
            } else {
                lift_words_.push_back({r});
            }
        }
    }

    void generate_phi_tau(std::size_t max_roots) {
        int fr = folded_rank();
        for (int j = 0; j < fr; ++j) {
            FoldedRoot root;
            root.vec = delta_tau_[j];
            root.coords.assign(fr, QScalar(0));
            root.coords[j] = QScalar(1);
            root_index_.emplace(root.vec, (int)phi_tau_.size());
            phi_tau_.push_back(std::move(root));
        }
        for (std::size_t head = 0; head < phi_tau_.size(); ++head) {
            for (int j = 0; j < fr; ++j) {
                FoldedRoot cur = phi_tau_[head];
                QScalar c = fold_pairing(delta_tau_[j], cur.vec);
                if (c.is_zero()) continue;
                LVector vec(cur.vec);
                for (std::size_t i = 0; i < vec.size(); ++i)
                    vec[i] = vec[i] - c * delta_tau_[j][i];
                if (root_index_.contains(vec)) continue;
                if (phi_tau_.size() >= max_roots)
                    throw ResourceLimitError("folded closure exceeded the configured bound");
                std::vector<QScalar> coords = cur.coords;
                coords[j] = coords[j] - c;
                root_index_.emplace(vec, (int)phi_tau_.size());
                phi_tau_.push_back(FoldedRoot{std::move(vec), std::move(coords)});
            }
        }
        // positive part: sign-coherent Delta_tau coordinates under the real
        // embedding (simple-system property of Delta_tau)
        for (std::size_t r = 0; r < phi_tau_.size(); ++r) {
            bool has_pos = false, has_neg = false;
            for (const QScalar& c : phi_tau_[r].coords) {
                int s = c.sign();
                has_pos |= s > 0;
                has_neg |= s < 0;
            }
            if (has_pos && has_neg)
                throw InvariantViolationError("folded root with mixed-sign coordinates");
            if (has_pos) positive_.push_back((int)r);
        }
    }

    void enumerate_w_tau() {
        int fr = folded_rank();
        int nroots = (int)phi_tau_.size();
        std::vector<std::vector<uint16_t>> gens(fr);
        for (int j = 0; j < fr; ++j) {
            gens[j].resize(nroots);
            for (int r = 0; r < nroots; ++r) {
                int img = root_index(fold_reflect_simple(j, phi_tau_[r].vec));
                if (img < 0)
                    throw InvariantViolationError("folded reflection leaves Phi_tau");
                gens[j][r] = (uint16_t)img;
            }
        }
        struct PermHash {
            std::size_t operator()(const std::vector<uint16_t>& p) const {
                std::size_t h = p.size();
                for (uint16_t x : p) h = h * 0x100000001b3ULL + x;
                return h;
            }
        };
        std::unordered_set<std::vector<uint16_t>, PermHash> seen;
        std::vector<std::vector<uint16_t>> queue;
        std::vector<uint16_t> id(nroots);
        for (int r = 0; r < nroots; ++r) id[r] = (uint16_t)r;
        seen.insert(id);
        queue.push_back(std::move(id));
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (int j = 0; j < fr; ++j) {
                std::vector<uint16_t> next(nroots);
                for (int r = 0; r < nroots; ++r) next[r] = gens[j][queue[head][r]];
                if (seen.insert(next).second) queue.push_back(std::move(next));
            }
        }
        w_tau_order_ = queue.size();
    }

    std::shared_ptr<const RootDatum> datum_;
    TauPartition part_;
    std::shared_ptr<const FoldedSpace> space_;
    bool split_;
    std::vector<int> rep_source_;
    std::vector<int> folded_pos_;
    std::vector<LVector> delta_tau_;
    std::vector<std::string> folded_names_;
    std::vector<std::vector<int>> lift_words_;
    std::vector<FoldedRoot> phi_tau_;
    std::vector<int> positive_;
    std::unordered_map<LVector, int, LVecHash> root_index_;
    std::size_t w_tau_order_ = 0;
};

}  // namespace foldlab
