#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqwall/expr/rational_fn.hpp"

namespace dqwall::elimination {

using expr::Poly;
using expr::RationalFn;
using expr::Symbol;

inline constexpr int kMaxShift = 2;
inline constexpr int kMaxOrder = 4;

/// The formal unknown d^n/dx^n rho(x, p + i k alpha).
struct Unknown {
    int k = 0;
    int n = 0;

    Unknown() = default;
    Unknown(int shift, int order) : k(shift), n(order) {
        if (shift < -kMaxShift || shift > kMaxShift) throw std::out_of_range("shift out of bounds: " + std::to_string(shift));
        if (order < 0 || order > kMaxOrder) throw std::out_of_range("derivative order out of bounds: " + std::to_string(order));
    }

    bool is_target() const { return k == 0; }

    /// D2R+1 style name; R0 for the bare unknown.
    std::string name() const {
        std::string out = n > 0 ? "D" + std::to_string(n) : "";
        out += "R";
        if (k > 0) out += "+";
        out += std::to_string(k);
        return out;
    }

    /// Canonical order: highest derivative first, then increasing shift.
    friend std::strong_ordering operator<=>(const Unknown& a, const Unknown& b) {
        if (a.n != b.n) return b.n <=> a.n;
        return a.k <=> b.k;
    }
    friend bool operator==(const Unknown&, const Unknown&) = default;
};

enum class Provenance { base_im, base_re, shifted, differentiated, combined, limit, operator_expansion };

inline const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::base_im: return "base-Im";
        case Provenance::base_re: return "base-Re";
        case Provenance::shifted: return "shifted";
        case Provenance::differentiated: return "differentiated";
        case Provenance::combined: return "combined";
        case Provenance::limit: return "limit";
        case Provenance::operator_expansion: return "operator-expansion";
    }
    return "?";
}

/// sum_U c_U * U = 0, linear in the unknowns, no zero coefficients stored.
class Relation {
public:
    Relation() = default;
    Relation(Provenance provenance, std::string label) : provenance_(provenance), label_(std::move(label)) {}

    void add(const Unknown& u, const RationalFn& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(u, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    RationalFn coefficient(const Unknown& u) const {
        auto it = terms_.find(u);
        return it == terms_.end() ? RationalFn() : it->second;
    }

    const std::map<Unknown, RationalFn>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool targets_only() const {
        for (const auto& [u, c] : terms_)
            if (!u.is_target()) return false;
        return true;
    }

    Provenance provenance() const { return provenance_; }
    const std::string& label() const { return label_; }
    void set_origin(Provenance provenance, std::string label) {
        provenance_ = provenance;
        label_ = std::move(label);
    }

    Relation scaled(const RationalFn& f) const {
        Relation out(provenance_, label_);
        if (f.is_zero()) return out;
        for (const auto& [u, c] : terms_) out.terms_.emplace(u, c * f);
        return out;
    }

    friend Relation operator+(const Relation& a, const Relation& b) {
        Relation out = a;
        for (const auto& [u, c] : b.terms_) out.add(u, c);
        out.provenance_ = Provenance::combined;
        return out;
    }
    friend Relation operator-(const Relation& a, const Relation& b) { return a + b.scaled(RationalFn(-1)); }

    /// Same coefficients on the same unknowns; provenance is not compared.
    friend bool operator==(const Relation& a, const Relation& b) { return a.terms_ == b.terms_; }

    std::string to_string() const {
        if (terms_.empty()) return "0 = 0";
        std::string out;
        for (const auto& [u, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.to_string() + ")*" + u.name();
        }
        return out + " = 0";
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (const auto& [u, c] : terms_) j[u.name()] = c.to_string();
        return j;
    }

private:
    std::map<Unknown, RationalFn> terms_;
    Provenance provenance_ = Provenance::combined;
    std::string label_;
};

inline std::ostream& operator<<(std::ostream& os, const Relation& r) { return os << r.to_string(); }

/// Clears denominators, removes the polynomial content of the coefficients and scales so the
/// leading coefficient of the highest-order term is 1/16 (a constant when the relation allows it).
/// Returns the factor f with normalized == r * f.
inline RationalFn normalize_relation(Relation& r) {
    if (r.is_zero()) return RationalFn(1);
    Poly den(1);
    for (const auto& [u, c] : r.terms()) {
        const Poly& d = c.den();
        if (!d.is_one()) den = *(den * d).divide_exact(expr::gcd(den, d));
    }
    Poly content;
    for (const auto& [u, c] : r.terms()) {
        content = expr::gcd(content, c.num() * *den.divide_exact(c.den()));
        if (content.is_one()) break;
    }
    RationalFn factor(den, content);
    const RationalFn lead = r.terms().begin()->second * factor;
    factor *= RationalFn(Poly(expr::GaussianRational::ratio(1, 16) / lead.num().leading_coefficient()));
    r = r.scaled(factor);
    return factor;
}

}  // namespace dqwall::elimination
