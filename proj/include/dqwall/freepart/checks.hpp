#pragma once

#include <string>
#include <vector>

#include "dqwall/freepart/free_state.hpp"
#include "dqwall/residual/report.hpp"

namespace dqwall::freepart {

using residual::ResidualReport;

namespace detail {

/// Exact checks report the number of surviving terms; any nonzero count fails.
inline ResidualReport exact_report(std::string case_id, std::string equation, std::size_t nonzero, std::size_t total,
                                   nlohmann::ordered_json details, double tolerance) {
    ResidualReport r;
    r.case_id = std::move(case_id);
    r.equation = std::move(equation);
    r.grid = {{"exact", true}};
    r.max_residual = static_cast<double>(nonzero);
    r.normalization = static_cast<double>(total);
    r.details = std::move(details);
    residual::finalize(r, tolerance);
    return r;
}

}  // namespace detail

/// Both star-genvalue residuals of the fully symbolic state.
inline std::vector<ResidualReport> stargen_reports(double tolerance = 0.0) {
    const auto st = FreeState::symbolic();
    const auto r = stargen_residual_free(st);
    const std::size_t total = st.distribution().terms().size();
    return {detail::exact_report("symbolic_state", "stargen_im", r.imaginary.terms().size(), total,
                                 {{"residual", r.imaginary.to_string()}}, tolerance),
            detail::exact_report("symbolic_state", "stargen_re", r.real.terms().size(), total,
                                 {{"residual", r.real.to_string()}}, tolerance)};
}

/// star_states(s, s) against delta(0)[(a+^2 + |b|^2), (a-^2 + |b|^2), (a+ + a-) b].
inline ResidualReport star_square_report(double tolerance = 0.0) {
    const auto st = FreeState::symbolic();
    const auto o = star_states(st, st);
    const Poly bb = st.b * st.b.conj();
    const Poly expected[] = {st.a_plus * st.a_plus + bb, st.a_minus * st.a_minus + bb, (st.a_plus + st.a_minus) * st.b,
                             (st.a_plus + st.a_minus) * st.b.conj()};
    const Poly got[] = {o.a_plus, o.a_minus, o.b_up, o.b_down};
    std::size_t mismatched = o.delta_zero ? 0 : 1;
    for (int i = 0; i < 4; ++i) mismatched += got[i] != expected[i];
    return detail::exact_report("symbolic_state", "star_square", mismatched, 4, {{"star_square", o.distribution.to_string()}},
                                tolerance);
}

/// purity_constraint(from_wavefunction(alpha_+, alpha_-)) for symbolic complex amplitudes.
inline ResidualReport round_trip_report(double tolerance = 0.0) {
    const Poly alpha_plus = expr::sym(Symbol::a_p) + Poly::i() * expr::sym(Symbol::b_r);
    const Poly alpha_minus = expr::sym(Symbol::a_m) + Poly::i() * expr::sym(Symbol::b_i);
    const auto c = purity_constraint(from_wavefunction(alpha_plus, alpha_minus));
    return detail::exact_report("symbolic_amplitudes", "purity", c.size(), 1,
                                {{"alpha_plus", alpha_plus.to_string()}, {"alpha_minus", alpha_minus.to_string()},
                                 {"constraint", c.to_string()}},
                                tolerance);
}

/// b = sqrt(a+ a-) e^{i(phi+ - phi-)} for amplitudes 2 e^{i phi+}, 3 e^{i phi-} with rational unit
/// phases, and invariance under a common phase.
inline ResidualReport phase_relation_report(double tolerance = 0.0) {
    const Poly u_plus(GaussianRational(mpq_class(3, 5), mpq_class(4, 5)));
    const Poly u_minus(GaussianRational(mpq_class(5, 13), mpq_class(12, 13)));
    const Poly gauge(GaussianRational(mpq_class(8, 17), mpq_class(15, 17)));
    const auto st = from_wavefunction(Poly(2) * u_plus, Poly(3) * u_minus);
    const auto shifted = from_wavefunction(gauge * Poly(2) * u_plus, gauge * Poly(3) * u_minus);
    std::size_t failures = 0;
    failures += st.b != Poly(6) * u_plus * u_minus.conj();
    failures += shifted.a_plus != st.a_plus || shifted.a_minus != st.a_minus || shifted.b != st.b;
    failures += !purity_constraint(st).is_zero();
    return detail::exact_report("rational_phases", "phase_relation", failures, 3, {{"b", st.b.to_string()}}, tolerance);
}

inline std::vector<ResidualReport> free_reports(double tolerance = 0.0) {
    auto out = stargen_reports(tolerance);
    out.push_back(star_square_report(tolerance));
    out.push_back(round_trip_report(tolerance));
    out.push_back(phase_relation_report(tolerance));
    return out;
}

}  // namespace dqwall::freepart
