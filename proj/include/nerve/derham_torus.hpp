#pragma once

// Translation-invariant de Rham models on nerves of tori. Invariant forms on
// (T^n)^p form the exterior algebra on n*p closed 1-forms dx_{j,a}
// (j = 1..p the nerve coordinate, a = 1..n the torus coordinate), so the
// exterior differential vanishes and only the simplicial direction acts.

#include "nerve/complex.hpp"
#include "nerve/exterior.hpp"

#include <map>
#include <vector>

namespace nerve {

struct TorusSpec {
    std::size_t rank = 0;
};

namespace detail {

inline std::uint32_t torus_generator(std::size_t coordinate, std::size_t axis, std::size_t n)
{
    return static_cast<std::uint32_t>(coordinate * n + axis);
}

inline void combinations(std::size_t m, std::size_t q, std::size_t start, std::vector<std::uint32_t>& cur,
                         std::vector<std::vector<std::uint32_t>>& out)
{
    if (cur.size() == q) {
        out.push_back(cur);
        return;
    }
    for (std::size_t g = start; g + (q - cur.size()) <= m; ++g) {
        cur.push_back(static_cast<std::uint32_t>(g));
        combinations(m, q, g + 1, cur, out);
        cur.pop_back();
    }
}

/// Exponent vectors of total degree k in n variables, lexicographically descending.
inline void exponents(std::size_t n, std::size_t k, std::vector<std::uint32_t>& cur,
                      std::vector<std::vector<std::uint32_t>>& out)
{
    if (cur.size() + 1 == n || n == 0) {
        if (n == 0) {
            if (k == 0)
                out.push_back({});
            return;
        }
        cur.push_back(static_cast<std::uint32_t>(k));
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (std::size_t e = k + 1; e-- > 0;) {
        cur.push_back(static_cast<std::uint32_t>(e));
        exponents(n, k - e, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

/// q-subsets of m generators in lexicographic order: the basis of Lambda^q.
inline std::vector<std::vector<std::uint32_t>> exterior_basis(std::size_t m, std::size_t q)
{
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur;
    if (q <= m)
        detail::combinations(m, q, 0, cur, out);
    return out;
}

inline std::vector<std::vector<std::uint32_t>> polynomial_basis(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur;
    detail::exponents(n, k, cur, out);
    return out;
}

/// Pullback of invariant 1-forms along eps_i : (T^n)^p -> (T^n)^{p-1}.
/// Column (j-1)*n + a holds the image of dy_{j,a} in the dx basis.
inline SparseMatrix torus_face_pullback(std::size_t i, std::size_t p, std::size_t n)
{
    if (p == 0 || i > p)
        throw Error(ErrorCode::IndexOutOfRange, "torus face " + std::to_string(i) + " at level " + std::to_string(p));
    std::vector<Triplet> t;
    for (std::size_t j = 0; j + 1 < p; ++j) // dy_{j+1}, zero-based j
        for (std::size_t a = 0; a < n; ++a) {
            const std::size_t col = detail::torus_generator(j, a, n);
            auto put = [&](std::size_t coord) { t.push_back({detail::torus_generator(coord, a, n), col, 1}); };
            if (i == 0) {
                put(j + 1);
            } else if (i == p) {
                put(j);
            } else if (j + 1 < i) {
                put(j);
            } else if (j + 1 == i) {
                put(j);
                put(j + 1);
            } else {
                put(j + 1);
            }
        }
    return SparseMatrix::from_triplets(n * p, n * (p - 1), std::move(t));
}

/// The 1-form images of torus_face_pullback as exterior elements.
inline std::vector<ExteriorElement> pullback_images(const SparseMatrix& gens)
{
    std::vector<ExteriorElement> img(gens.cols());
    for (const auto& tr : gens.triplets())
        img[tr.col] += ExteriorElement::form(static_cast<std::uint32_t>(tr.row), Rational(tr.value));
    return img;
}

namespace detail {

inline std::int64_t integral(const Rational& r)
{
    if (r.denominator() != 1)
        throw Error(ErrorCode::InvariantViolation, "non-integral coefficient in an integral model");
    return r.numerator();
}

/// Matrix of an operator on the listed basis monomials, images read back in `target`.
template <class Op>
SparseMatrix operator_matrix(const std::vector<ExteriorMonomial>& source, const std::vector<ExteriorMonomial>& target, Op&& op)
{
    std::map<ExteriorMonomial, std::size_t> index;
    for (std::size_t k = 0; k < target.size(); ++k)
        index.emplace(target[k], k);
    std::vector<Triplet> t;
    for (std::size_t c = 0; c < source.size(); ++c) {
        const ExteriorElement img = op(ExteriorElement::monomial(source[c]));
        for (const auto& [m, coeff] : img.terms()) {
            auto it = index.find(m);
            if (it == index.end())
                throw Error(ErrorCode::InvariantViolation, "operator leaves the target basis");
            t.push_back({it->second, c, integral(coeff)});
        }
    }
    return SparseMatrix::from_triplets(target.size(), source.size(), std::move(t));
}

inline std::vector<ExteriorMonomial> form_monomials(std::size_t gens, std::size_t q)
{
    std::vector<ExteriorMonomial> out;
    for (auto& s : exterior_basis(gens, q))
        out.push_back(ExteriorMonomial{std::move(s), {}});
    return out;
}

/// Basis of (Lambda(gens) (x) k[u_1..u_n]) in Cartan degree c: ordered by
/// polynomial degree, then form monomial, then exponent vector.
inline std::vector<ExteriorMonomial> cartan_monomials(std::size_t gens, std::size_t n, std::size_t c)
{
    std::vector<ExteriorMonomial> out;
    for (std::size_t k = 0; 2 * k <= c; ++k) {
        if (k > 0 && n == 0)
            break;
        const auto polys = polynomial_basis(n, k);
        for (auto& f : exterior_basis(gens, c - 2 * k))
            for (const auto& e : polys) {
                ExteriorMonomial m{f, e};
                while (!m.poly.empty() && m.poly.back() == 0)
                    m.poly.pop_back();
                out.push_back(std::move(m));
            }
    }
    return out;
}

} // namespace detail

/// Pullback along eps_i on Lambda^q: columns index q-forms at level p-1,
/// rows q-forms at level p.
inline SparseMatrix exterior_power_pullback(std::size_t i, std::size_t p, std::size_t n, std::size_t q)
{
    const auto images = pullback_images(torus_face_pullback(i, p, n));
    return detail::operator_matrix(detail::form_monomials(n * (p - 1), q), detail::form_monomials(n * p, q),
                                   [&](const ExteriorElement& e) { return e.substitute(images); });
}

/// Double complex of invariant forms on the torus nerve: block (p,q) is
/// Lambda^q on n*p generators, d' the alternating pullback sum, d'' = 0.
inline DoubleComplexSpec bt_double_complex_spec(std::size_t n, int maxdeg)
{
    if (maxdeg < 0)
        throw Error(ErrorCode::SizeMismatch, "max degree must be nonnegative");
    DoubleComplexSpec dc;
    dc.max_degree = maxdeg;
    const int top = maxdeg + 1;
    for (int p = 0; p <= top; ++p)
        for (int q = 0; p + q <= top; ++q)
            dc.dims[{p, q}] = detail::form_monomials(n * p, q).size();
    for (int p = 0; p < top; ++p)
        for (int q = 0; p + q < top; ++q) {
            SparseMatrix d(dc.dim(p + 1, q), dc.dim(p, q));
            for (int i = 0; i <= p + 1; ++i) {
                SparseMatrix pb = exterior_power_pullback(i, p + 1, n, q);
                d = d + (i % 2 == 0 ? pb : pb.scaled(-1));
            }
            dc.d[0][{p, q}] = std::move(d);
        }
    return dc;
}

inline GradedComplex bt_double_complex(std::size_t n, int maxdeg) { return totalize_double(bt_double_complex_spec(n, maxdeg)); }

/// Equivariant model for G = H = T^n acting by (trivial) conjugation: block
/// (p,c) is the Cartan-degree-c part of Lambda(dx) (x) k[u_1..u_n]; d' acts
/// on forms only and d'' = 0.
inline DoubleComplexSpec weinstein_torus_spec(std::size_t n, int maxdeg)
{
    if (maxdeg < 0)
        throw Error(ErrorCode::SizeMismatch, "max degree must be nonnegative");
    DoubleComplexSpec dc;
    dc.max_degree = maxdeg;
    const int top = maxdeg + 1;
    for (int p = 0; p <= top; ++p)
        for (int c = 0; p + c <= top; ++c)
            dc.dims[{p, c}] = detail::cartan_monomials(n * p, n, c).size();
    for (int p = 0; p < top; ++p)
        for (int c = 0; p + c < top; ++c) {
            std::vector<std::vector<ExteriorElement>> images;
            for (int i = 0; i <= p + 1; ++i)
                images.push_back(pullback_images(torus_face_pullback(i, p + 1, n)));
            dc.d[0][{p, c}] = detail::operator_matrix(
                detail::cartan_monomials(n * p, n, c), detail::cartan_monomials(n * (p + 1), n, c), [&](const ExteriorElement& e) {
                    ExteriorElement sum;
                    for (int i = 0; i <= p + 1; ++i) {
                        ExteriorElement pb = e.substitute(images[i]);
                        sum += (i % 2 == 0) ? pb : pb * Rational(-1);
                    }
                    return sum;
                });
        }
    return dc;
}

inline GradedComplex weinstein_torus_complex(std::size_t n, int maxdeg) { return totalize_double(weinstein_torus_spec(n, maxdeg)); }

/// Cartan model of the free rotation action of the circle on itself:
/// Lambda(theta) (x) k[u] with d_H(theta) = sign * u and d_H(u) = 0.
inline GradedComplex cartan_free_circle(int maxdeg, int sign = -1)
{
    if (maxdeg < 0)
        throw Error(ErrorCode::SizeMismatch, "max degree must be nonnegative");
    const std::vector<ExteriorElement> d_theta{ExteriorElement::poly(0) * Rational(sign)};
    std::vector<std::size_t> dims;
    std::vector<SparseMatrix> d;
    for (int k = 0; k <= maxdeg + 1; ++k)
        dims.push_back(detail::cartan_monomials(1, 1, k).size());
    for (int k = 0; k <= maxdeg; ++k)
        d.push_back(detail::operator_matrix(detail::cartan_monomials(1, 1, k), detail::cartan_monomials(1, 1, k + 1),
                                            [&](const ExteriorElement& e) { return e.derivation(d_theta); }));
    GradedComplex c(std::move(dims), std::move(d));
    c.verify_d_squared();
    return c;
}

} // namespace nerve
