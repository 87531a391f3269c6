#pragma once

#include <memory>
#include <string>
#include <vector>

#include "foldlab/rootsys.hpp"

namespace foldlab {

// A validated realization from the built-in catalog.
struct Catalog {
    std::string family;
    std::shared_ptr<const RootDatum> datum;
    TauPartition partition;
};

namespace detail {

inline UVector uv(std::initializer_list<long> xs) {
    UVector v;
    v.reserve(xs.size());
    for (long x : xs) v.push_back(make_rat(x));
    return v;
}

// A_{2n-1} -> C_n over k = Z[1/2], l = k x k (Example with the symplectic
// diagram involution). Simple roots a_1..a_{n-1}, a_n, tau a_{n-1}..tau a_1.
inline Catalog build_a2c(int n) {
    if (n < 2) throw ConfigError("a2c requires n >= 2");
    auto alg = QuadraticAlgebra::split_over(BaseRing({2}));
    auto space = std::make_shared<const FoldedSpace>(n, alg);
    int m = 2 * n;
    std::vector<UVector> simples;
    std::vector<std::string> names;
    auto slot_pair = [&](int lo, const Rat& y, const Rat& yp, UVector& v) {
        v[2 * lo] = y;
        v[2 * lo + 1] = yp;
    };
    for (int i = 0; i < n - 1; ++i) {  // a_i = (0,..., (0,1), (0,-1), ...)
        UVector v(m, Rat(0));
        slot_pair(i, make_rat(0), make_rat(1), v);
        slot_pair(i + 1, make_rat(0), make_rat(-1), v);
        simples.push_back(std::move(v));
    }
    {
        UVector v(m, Rat(0));  // a_n = (0,...,0,1+tau)
        slot_pair(n - 1, make_rat(1), make_rat(1), v);
        simples.push_back(std::move(v));
    }
    for (int i = n - 2; i >= 0; --i) {  // tau a_i = (..., (1,0), (-1,0), ...)
        UVector v(m, Rat(0));
        slot_pair(i, make_rat(1), make_rat(0), v);
        slot_pair(i + 1, make_rat(-1), make_rat(0), v);
        simples.push_back(std::move(v));
    }
    for (int i = 1; i <= 2 * n - 1; ++i) names.push_back("a" + std::to_string(i));
    auto datum = std::make_shared<const RootDatum>(space, std::move(simples), std::move(names));
    return Catalog{"a2c" + std::to_string(n), datum, datum->validate_folded_rep()};
}

// D_{n+1} -> B_n over k = Z[1/2], l = k x k.
inline Catalog build_d2b(int n) {
    if (n < 2) throw ConfigError("d2b requires n >= 2");
    auto alg = QuadraticAlgebra::split_over(BaseRing({2}));
    auto space = std::make_shared<const FoldedSpace>(n, alg);
    int m = 2 * n;
    std::vector<UVector> simples;
    std::vector<std::string> names;
    for (int i = 0; i < n - 1; ++i) {  // a_i = (..., (1,1), (-1,-1), ...)
        UVector v(m, Rat(0));
        v[2 * i] = make_rat(1);
        v[2 * i + 1] = make_rat(1);
        v[2 * i + 2] = make_rat(-1);
        v[2 * i + 3] = make_rat(-1);
        simples.push_back(std::move(v));
    }
    {
        UVector v(m, Rat(0));  // a_n = (0,...,0,2 tau)
        v[2 * (n - 1) + 1] = make_rat(2);
        simples.push_back(std::move(v));
    }
    {
        UVector v(m, Rat(0));  // a_{n+1} = tau a_n = (0,...,0,2)
        v[2 * (n - 1)] = make_rat(2);
        simples.push_back(std::move(v));
    }
    for (int i = 1; i <= n + 1; ++i) names.push_back("a" + std::to_string(i));
    auto datum = std::make_shared<const RootDatum>(space, std::move(simples), std::move(names));
    return Catalog{"d2b" + std::to_string(n), datum, datum->validate_folded_rep()};
}

// The icosian realization of E8 over k = Z[1/5], l = Z(tau)[1/5]
// (Moody-Patera coordinates). Rows are (y1,y1',...,y4,y4') for a1, a2, a3,
// tau a4, tau a3, tau a2, tau a1, a4.
inline const std::vector<UVector>& e8_icosian_simples() {
    static const std::vector<UVector> simples = {
        uv({-1, 1, 0, -1, 0, 0, -1, 0}),   // a1 = (-s, -t, 0, -1)
        uv({0, 0, -1, 1, 0, -1, 1, 0}),    // a2 = (0, -s, -t, 1)
        uv({0, 0, 1, 0, -1, 1, 0, -1}),    // a3 = (0, 1, -s, -t)
        uv({0, 0, 0, -1, 1, 0, 1, 1}),     // tau a4 = (0, -t, 1, t^2)
        uv({0, 0, 0, 1, 1, 0, -1, -1}),    // tau a3 = (0, t, 1, -t^2)
        uv({0, 0, 1, 0, -1, -1, 0, 1}),    // tau a2 = (0, 1, -t^2, t)
        uv({1, 0, -1, -1, 0, 0, 0, -1}),   // tau a1 = (1, -t^2, 0, -t)
        uv({0, 0, -1, 0, -1, 1, 0, 1}),    // a4 = (0, -1, -s, t)
    };
    return simples;
}

inline Catalog build_e8_subfamily(const std::string& family, const std::vector<int>& keep) {
    auto alg = QuadraticAlgebra::golden_over(BaseRing({5}));
    auto space = std::make_shared<const FoldedSpace>(4, alg);
    const auto& all = e8_icosian_simples();
    std::vector<UVector> simples;
    std::vector<std::string> names;
    for (int i : keep) {
        simples.push_back(all[i]);
        names.push_back("a" + std::to_string(i + 1));
    }
    auto datum = std::make_shared<const RootDatum>(space, std::move(simples), std::move(names));
    return Catalog{family, datum, datum->validate_folded_rep()};
}

}  // namespace detail

// Families: a2c<n> (A_{2n-1} -> C_n), d2b<n> (D_{n+1} -> B_n), e8h4,
// d6h3 and a4h2 (the D6 and A4 sub-data of the icosian E8 realization).
inline Catalog catalog_build(const std::string& family) {
    auto parse_n = [&](std::size_t prefix) {
        try {
            int n = std::stoi(family.substr(prefix));
            return n;
        } catch (...) {
            throw ConfigError("cannot parse catalog family '" + family + "'");
        }
    };
    if (family == "e8h4")
        return detail::build_e8_subfamily(family, {0, 1, 2, 3, 4, 5, 6, 7});
    if (family == "d6h3")
        return detail::build_e8_subfamily(family, {1, 2, 3, 4, 5, 7});
    if (family == "a4h2")
        return detail::build_e8_subfamily(family, {2, 3, 4, 7});
    if (family.rfind("a2c", 0) == 0) return detail::build_a2c(parse_n(3));
    if (family.rfind("d2b", 0) == 0) return detail::build_d2b(parse_n(3));
    throw ConfigError("unknown catalog family '" + family + "'");
}

inline const std::vector<std::string>& catalog_families() {
    static const std::vector<std::string> fams = {"a2c2", "a2c3", "d2b3", "a4h2", "d6h3", "e8h4"};
    return fams;
}

}  // namespace foldlab
