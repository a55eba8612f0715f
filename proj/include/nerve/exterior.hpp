#pragma once

// Elements of (exterior algebra on odd generators) (x) (polynomials on even
// generators) with exact rational coefficients.

#include "nerve/error.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace nerve {

using Rational = boost::rational<std::int64_t>;

/// One basis monomial: a strictly increasing list of 1-form generators and
/// the exponent vector of the polynomial generators (trailing zeros trimmed).
struct ExteriorMonomial {
    std::vector<std::uint32_t> forms;
    std::vector<std::uint32_t> poly;

    std::size_t form_degree() const noexcept { return forms.size(); }
    std::size_t poly_degree() const
    {
        std::size_t s = 0;
        for (auto e : poly)
            s += e;
        return s;
    }
    /// Forms have degree 1, polynomial generators degree 2.
    std::size_t degree() const { return form_degree() + 2 * poly_degree(); }

    auto operator<=>(const ExteriorMonomial&) const = default;
};

class ExteriorElement {
public:
    ExteriorElement() = default;

    static ExteriorElement scalar(Rational c)
    {
        ExteriorElement e;
        e.add_term(ExteriorMonomial{}, c);
        return e;
    }

    static ExteriorElement form(std::uint32_t generator, Rational c = 1)
    {
        ExteriorElement e;
        e.add_term(ExteriorMonomial{{generator}, {}}, c);
        return e;
    }

    static ExteriorElement poly(std::uint32_t generator, std::uint32_t exponent = 1, Rational c = 1)
    {
        ExteriorMonomial m;
        m.poly.assign(generator + 1, 0);
        m.poly[generator] = exponent;
        trim(m.poly);
        ExteriorElement e;
        e.add_term(std::move(m), c);
        return e;
    }

    static ExteriorElement monomial(ExteriorMonomial m, Rational c = 1)
    {
        if (!std::is_sorted(m.forms.begin(), m.forms.end()) ||
            std::adjacent_find(m.forms.begin(), m.forms.end()) != m.forms.end())
            throw Error(ErrorCode::InvariantViolation, "form generators must be strictly increasing");
        trim(m.poly);
        ExteriorElement e;
        e.add_term(std::move(m), c);
        return e;
    }

    const std::map<ExteriorMonomial, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Rational coefficient(const ExteriorMonomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    ExteriorElement& operator+=(const ExteriorElement& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }

    ExteriorElement& operator-=(const ExteriorElement& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }

    ExteriorElement operator*(Rational s) const
    {
        ExteriorElement e;
        if (s.numerator() != 0)
            for (const auto& [m, c] : terms_)
                e.terms_.emplace(m, c * s);
        return e;
    }

    /// Wedge product with Koszul signs; polynomial parts multiply.
    friend ExteriorElement operator*(const ExteriorElement& a, const ExteriorElement& b)
    {
        ExteriorElement out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                int sign = 1;
                ExteriorMonomial m;
                if (!merge_forms(ma.forms, mb.forms, m.forms, sign))
                    continue;
                m.poly.assign(std::max(ma.poly.size(), mb.poly.size()), 0);
                for (std::size_t k = 0; k < ma.poly.size(); ++k)
                    m.poly[k] += ma.poly[k];
                for (std::size_t k = 0; k < mb.poly.size(); ++k)
                    m.poly[k] += mb.poly[k];
                out.add_term(std::move(m), ca * cb * sign);
            }
        return out;
    }

    friend ExteriorElement operator+(ExteriorElement a, const ExteriorElement& b) { return a += b; }
    friend ExteriorElement operator-(ExteriorElement a, const ExteriorElement& b) { return a -= b; }

    bool operator==(const ExteriorElement&) const = default;

    /// Algebra map fixing polynomial generators and sending form generator j
    /// to images[j] (each image must be a sum of 1-forms).
    ExteriorElement substitute(const std::vector<ExteriorElement>& images) const
    {
        ExteriorElement out;
        for (const auto& [m, c] : terms_) {
            ExteriorElement acc = monomial(ExteriorMonomial{{}, m.poly}, c);
            for (auto g : m.forms) {
                if (g >= images.size())
                    throw Error(ErrorCode::IndexOutOfRange, "no image for form generator " + std::to_string(g));
                acc = acc * images[g];
            }
            out += acc;
        }
        return out;
    }

    /// Degree-one derivation: each form generator j maps to d_images[j]
    /// (an even element), polynomial generators are closed.
    ExteriorElement derivation(const std::vector<ExteriorElement>& d_images) const
    {
        ExteriorElement out;
        for (const auto& [m, c] : terms_) {
            for (std::size_t s = 0; s < m.forms.size(); ++s) {
                const auto g = m.forms[s];
                if (g >= d_images.size())
                    throw Error(ErrorCode::IndexOutOfRange, "no differential for form generator " + std::to_string(g));
                ExteriorMonomial rest{m.forms, m.poly};
                rest.forms.erase(rest.forms.begin() + static_cast<std::ptrdiff_t>(s));
                // Passing the derivation over s odd generators.
                const Rational sign = (s % 2 == 0) ? 1 : -1;
                out += d_images[g] * monomial(std::move(rest), c * sign);
            }
        }
        return out;
    }

private:
    static void trim(std::vector<std::uint32_t>& poly)
    {
        while (!poly.empty() && poly.back() == 0)
            poly.pop_back();
    }

    // Sorted merge; sign counts transpositions. False when a generator repeats.
    static bool merge_forms(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                            std::vector<std::uint32_t>& out, int& sign)
    {
        out.clear();
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i] < b[j])) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j] < a[i]) {
                // b[j] moves past the a.size() - i remaining entries of a.
                if ((a.size() - i) % 2 == 1)
                    sign = -sign;
                out.push_back(b[j++]);
            } else {
                return false;
            }
        }
        return true;
    }

    void add_term(ExteriorMonomial m, Rational c)
    {
        trim(m.poly);
        if (c.numerator() == 0)
            return;
        auto [it, inserted] = terms_.emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second.numerator() == 0)
                terms_.erase(it);
        }
    }

    std::map<ExteriorMonomial, Rational> terms_;
};

} // namespace nerve
