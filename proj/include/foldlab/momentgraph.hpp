#pragma once

#include <algorithm>
#include <atomic>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "foldlab/folding.hpp"
#include "foldlab/parallel.hpp"

namespace foldlab {

// A parabolic datum: the subset Theta of Delta, the dominant vector theta
// with B(theta, a) = 0 exactly on Theta, and (when a folding is attached)
// its image mu = pi_tau(theta), which is Delta_tau-dominant.
struct ThetaConfig {
    std::shared_ptr<const RootDatum> datum;
    const FoldingContext* folding = nullptr;
    std::vector<int> theta;
    UVector theta_vec;
    LVector mu;

    bool in_theta(int i) const {
        return std::find(theta.begin(), theta.end(), i) != theta.end();
    }
};

// Validates Theta (T-preservation when a folding is present), solves for
// theta over Q and computes mu with its dominance signs.
inline ThetaConfig choose_theta(std::shared_ptr<const RootDatum> datum,
                                std::vector<int> theta_set,
                                const FoldingContext* folding = nullptr) {
    std::sort(theta_set.begin(), theta_set.end());
    theta_set.erase(std::unique(theta_set.begin(), theta_set.end()), theta_set.end());
    const RootDatum& rd = *datum;
    for (int i : theta_set)
        if (i < 0 || i >= rd.rank()) throw ConfigError("theta index out of range");

    if (folding && !theta_set.empty()) {
        // T must preserve the k-span of the Theta-roots: solve T(a_i) in the
        // Theta basis, coefficients in k, unit determinant.
        const FoldedSpace& sp = *rd.space();
        const BaseRing& ring = sp.algebra().ring();
        int m = rd.ambient_dim(), t = (int)theta_set.size();
        Matrix<Rat> basis(m, std::vector<Rat>(t));
        for (int c = 0; c < t; ++c)
            for (int r = 0; r < m; ++r) basis[r][c] = rd.simple_roots()[theta_set[c]][r];
        Matrix<Rat> coef(t, std::vector<Rat>(t));
        for (int c = 0; c < t; ++c) {
            UVector img = sp.tau_op(rd.simple_roots()[theta_set[c]]);
            std::vector<Rat> b(img.begin(), img.end());
            auto sol = solve_linear(basis, b);
            if (!sol)
                throw ValidationError("Theta is not T-preserved: T(" +
                                      rd.names()[theta_set[c]] +
                                      ") lies outside the span of Theta");
            for (int r = 0; r < t; ++r) {
                if (!ring.contains((*sol)[r]))
                    throw ValidationError("Theta is not T-preserved over k at " +
                                          rd.names()[theta_set[c]]);
                coef[r][c] = (*sol)[r];
            }
        }
        if (!ring.is_unit(determinant(coef)))
            throw ValidationError("T restricted to the span of Theta is not invertible over k");
    }

    ThetaConfig cfg;
    cfg.datum = std::move(datum);
    cfg.folding = folding;
    cfg.theta = theta_set;
    cfg.theta_vec = rd.dominant_vector(cfg.theta);
    if (folding) {
        cfg.mu = folding->fold(cfg.theta_vec);
        // dominance of mu over l with zeros exactly on the folded Theta
        for (int j = 0; j < folding->folded_rank(); ++j) {
            int s = folding->dot(cfg.mu, folding->delta_tau()[j]).sign();
            bool in = cfg.in_theta(folding->rep_source()[j]);
            if (s != (in ? 0 : 1))
                throw InvariantViolationError("mu fails Delta_tau-dominance at X" +
                                              std::to_string(j + 1));
        }
    }
    return cfg;
}

struct GraphEdge {
    int src, dst, label;  // label indexes the positive roots of the side
};

namespace detail {

// Reachability helper shared by both graph types.
class Reachability {
public:
    void init(int n, const std::vector<GraphEdge>& edges, const std::vector<int>& rank) {
        n_ = n;
        adj_.assign(n, {});
        for (const GraphEdge& e : edges) adj_[e.src].push_back(e.dst);
        order_.resize(n);
        for (int i = 0; i < n; ++i) order_[i] = i;
        std::sort(order_.begin(), order_.end(),
                  [&](int a, int b) { return rank[a] > rank[b]; });
        if (n_ <= 4096) build_closure();
    }

    bool leq(int x, int y) const {
        if (x == y) return true;
        if (!closure_.empty()) return closure_[x][(std::size_t)y >> 6] >> (y & 63) & 1;
        // per-query DFS
        std::vector<char> seen(n_, 0);
        std::vector<int> stack{x};
        seen[x] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj_[v]) {
                if (w == y) return true;
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        return false;
    }

private:
    void build_closure() {
        std::size_t words = ((std::size_t)n_ + 63) >> 6;
        closure_.assign(n_, std::vector<std::uint64_t>(words, 0));
        // process by decreasing rank so successors are complete
        for (int v : order_) {
            auto& row = closure_[v];
            row[(std::size_t)v >> 6] |= 1ULL << (v & 63);
            for (int w : adj_[v])
                for (std::size_t i = 0; i < words; ++i) row[i] |= closure_[w][i];
        }
    }

    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<int> order_;
    std::vector<std::vector<std::uint64_t>> closure_;
};

}  // namespace detail

// Moment graph of the orbit W theta: vertices are exact orbit points in BFS
// discovery order (vertex 0 = theta), each with its discovery parent and
// generator; edges x -> r_alpha x for alpha in Phi+ with B(x, alpha) > 0,
// labelled by alpha; rank(x) counts the alpha with B(x, alpha) < 0.
class MomentGraph {
public:
    static MomentGraph build(const ThetaConfig& cfg, std::size_t max_vertices = 2000000,
                             int threads = 0) {
        if (threads <= 0) threads = default_threads();
        MomentGraph g;
        g.datum_ = cfg.datum;
        const RootDatum& rd = *cfg.datum;
        g.coords_.push_back(cfg.theta_vec);
        g.parent_.push_back(-1);
        g.via_gen_.push_back(-1);
        g.index_.emplace(cfg.theta_vec, 0);
        for (std::size_t head = 0; head < g.coords_.size(); ++head) {
            for (int i = 0; i < rd.rank(); ++i) {
                UVector img = rd.reflect_simple(i, g.coords_[head]);
                if (img == g.coords_[head]) continue;
                if (g.index_.contains(img)) continue;
                if (g.coords_.size() >= max_vertices)
                    throw ResourceLimitError("orbit exceeded the vertex bound");
                g.index_.emplace(img, (int)g.coords_.size());
                g.coords_.push_back(std::move(img));
                g.parent_.push_back((int)head);
                g.via_gen_.push_back(i);
            }
        }
        g.build_edges(threads);
        g.reach_.init((int)g.coords_.size(), g.edges_, g.rank_);
        return g;
    }

    const RootDatum& datum() const { return *datum_; }
    int vertex_count() const { return (int)coords_.size(); }
    const std::vector<UVector>& vertex_coords() const { return coords_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const std::vector<int>& ranks() const { return rank_; }
    const std::vector<int>& parents() const { return parent_; }
    const std::vector<int>& via_gens() const { return via_gen_; }
    std::size_t incidence_count() const { return incidences_; }

    int vertex_index(const UVector& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) throw LookupError("unknown vertex");
        return it->second;
    }

    std::optional<int> try_vertex_index(const UVector& v) const {
        auto it = index_.find(v);
        return it == index_.end() ? std::nullopt : std::optional<int>(it->second);
    }

    // Product-order word w with vertex = w(theta).
    std::vector<int> word(int v) const {
        std::vector<int> w;
        for (int cur = v; parent_[cur] >= 0; cur = parent_[cur]) w.push_back(via_gen_[cur]);
        return w;
    }

    bool bruhat_leq(int x, int y) const {
        if (x < 0 || y < 0 || x >= vertex_count() || y >= vertex_count())
            throw LookupError("vertex index out of range");
        return reach_.leq(x, y);
    }

private:
    void build_edges(int threads) {
        const RootDatum& rd = *datum_;
        const auto& pos = rd.positive_roots();
        std::size_t nv = coords_.size();
        rank_.assign(nv, 0);
        int chunks = 1;
        std::vector<std::vector<GraphEdge>> parts;
        std::atomic<std::size_t> incidences{0};
        parts.resize(threads < 1 ? 1 : threads);
        parallel_chunks(nv, threads, chunks, [&](int chunk, std::size_t lo, std::size_t hi) {
            auto& out = parts[chunk];
            std::size_t local_inc = 0;
            for (std::size_t v = lo; v < hi; ++v) {
                int neg = 0;
                for (std::size_t a = 0; a < pos.size(); ++a) {
                    ++local_inc;
                    Rat b = rd.bform(coords_[v], pos[a].vec);
                    int s = sign_of(b);
                    if (s == 0) continue;
                    if (s < 0) {
                        ++neg;
                        continue;
                    }
                    Rat c = 2 * b / rd.bform(pos[a].vec, pos[a].vec);
                    UVector img = uvec_sub(coords_[v], uvec_scale(c, pos[a].vec));
                    auto it = index_.find(img);
                    if (it == index_.end())
                        throw InvariantViolationError("reflection left the orbit");
                    out.push_back(GraphEdge{(int)v, it->second, (int)a});
                }
                rank_[v] = neg;
            }
            incidences += local_inc;
        });
        incidences_ = incidences;
        for (int c = 0; c < chunks; ++c)
            edges_.insert(edges_.end(), parts[c].begin(), parts[c].end());
    }

    std::shared_ptr<const RootDatum> datum_;
    std::vector<UVector> coords_;
    std::vector<int> parent_, via_gen_, rank_;
    std::vector<GraphEdge> edges_;
    UVecIndex index_;
    std::size_t incidences_ = 0;
    detail::Reachability reach_;
};

// Moment graph of the folded orbit W_tau mu, with the vertex injection
// iota(w mu) = w theta carried alongside each vertex. The iota image is
// propagated through the lifted reflections during the BFS; a rediscovery
// with a different image would falsify well-definedness and aborts.
class FoldedMomentGraph {
public:
    static FoldedMomentGraph build(const ThetaConfig& cfg, std::size_t max_vertices = 2000000,
                                   int threads = 0) {
        if (!cfg.folding) throw ConfigError("folded graph requires a folding");
        if (threads <= 0) threads = default_threads();
        FoldedMomentGraph g;
        g.fold_ = cfg.folding;
        const FoldingContext& f = *g.fold_;
        g.coords_.push_back(cfg.mu);
        g.iota_.push_back(cfg.theta_vec);
        g.parent_.push_back(-1);
        g.via_gen_.push_back(-1);
        g.index_.emplace(cfg.mu, 0);
        for (std::size_t head = 0; head < g.coords_.size(); ++head) {
            for (int j = 0; j < f.folded_rank(); ++j) {
                LVector img = f.fold_reflect_simple(j, g.coords_[head]);
                UVector iota_img = f.apply_lift(j, g.iota_[head]);
                auto it = g.index_.find(img);
                if (it != g.index_.end()) {
                    // rediscovery: the alternative word must give the same
                    // iota image (covers the stabilizer case img == current)
                    if (g.iota_[it->second] != iota_img)
                        throw InvariantViolationError(
                            "iota is not well-defined: conflicting representative words");
                    continue;
                }
                if (g.coords_.size() >= max_vertices)
                    throw ResourceLimitError("folded orbit exceeded the vertex bound");
                g.index_.emplace(img, (int)g.coords_.size());
                g.coords_.push_back(std::move(img));
                g.iota_.push_back(std::move(iota_img));
                g.parent_.push_back((int)head);
                g.via_gen_.push_back(j);
            }
        }
        g.build_edges(threads);
        g.reach_.init((int)g.coords_.size(), g.edges_, g.rank_);
        return g;
    }

    const FoldingContext& folding() const { return *fold_; }
    int vertex_count() const { return (int)coords_.size(); }
    const std::vector<LVector>& vertex_coords() const { return coords_; }
    const std::vector<UVector>& iota_vectors() const { return iota_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const std::vector<int>& ranks() const { return rank_; }
    const std::vector<int>& parents() const { return parent_; }
    const std::vector<int>& via_gens() const { return via_gen_; }
    std::size_t incidence_count() const { return incidences_; }

    int vertex_index(const LVector& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) throw LookupError("unknown folded vertex");
        return it->second;
    }

    std::vector<int> word(int v) const {
        std::vector<int> w;
        for (int cur = v; parent_[cur] >= 0; cur = parent_[cur]) w.push_back(via_gen_[cur]);
        return w;
    }

    // Indices of the iota images inside the source graph.
    std::vector<int> iota_indices(const MomentGraph& source) const {
        std::vector<int> out(coords_.size());
        for (std::size_t v = 0; v < coords_.size(); ++v)
            out[v] = source.vertex_index(iota_[v]);
        return out;
    }

    bool bruhat_leq(int x, int y) const {
        if (x < 0 || y < 0 || x >= vertex_count() || y >= vertex_count())
            throw LookupError("vertex index out of range");
        return reach_.leq(x, y);
    }

private:
    void build_edges(int threads) {
        const FoldingContext& f = *fold_;
        const auto& pos = f.phi_tau_positive();
        std::size_t nv = coords_.size();
        rank_.assign(nv, 0);
        int chunks = 1;
        std::vector<std::vector<GraphEdge>> parts;
        std::atomic<std::size_t> incidences{0};
        parts.resize(threads < 1 ? 1 : threads);
        parallel_chunks(nv, threads, chunks, [&](int chunk, std::size_t lo, std::size_t hi) {
            auto& out = parts[chunk];
            std::size_t local_inc = 0;
            for (std::size_t v = lo; v < hi; ++v) {
                int neg = 0;
                for (std::size_t a = 0; a < pos.size(); ++a) {
                    ++local_inc;
                    const LVector& beta = f.phi_tau()[pos[a]].vec;
                    QScalar b = f.dot(coords_[v], beta);
                    int s = b.sign();
                    if (s == 0) continue;
                    if (s < 0) {
                        ++neg;
                        continue;
                    }
                    LVector img = f.fold_reflect(beta, coords_[v]);
                    auto it = index_.find(img);
                    if (it == index_.end())
                        throw InvariantViolationError("folded reflection left the orbit");
                    out.push_back(GraphEdge{(int)v, it->second, (int)a});
                }
                rank_[v] = neg;
            }
            incidences += local_inc;
        });
        incidences_ = incidences;
        for (int c = 0; c < chunks; ++c)
            edges_.insert(edges_.end(), parts[c].begin(), parts[c].end());
    }

    const FoldingContext* fold_ = nullptr;
    std::vector<LVector> coords_;
    std::vector<UVector> iota_;
    std::vector<int> parent_, via_gen_, rank_;
    std::vector<GraphEdge> edges_;
    std::unordered_map<LVector, int, LVecHash> index_;
    std::size_t incidences_ = 0;
    detail::Reachability reach_;
};

}  // namespace foldlab
