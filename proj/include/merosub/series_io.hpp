#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include "merosub/series.hpp"

namespace merosub {

using SeriesLiteral = std::variant<AnalyticSeries, MeromorphicSeries>;

// Plain-text series literals: a header line "analytic K" or "meromorphic K",
// then one coefficient per line as "re im", lowest order first. Analytic
// literals carry K+1 coefficients (c_0..c_K), meromorphic ones K (a_1..a_K).
inline SeriesLiteral read_series(std::istream& in) {
    std::string kind;
    int order = 0;
    if (!(in >> kind >> order))
        throw UsageError("series literal: missing 'analytic K' or 'meromorphic K' header");
    if (order < 1)
        throw UsageError("series literal: truncation order must be >= 1");
    const bool analytic = kind == "analytic";
    if (!analytic && kind != "meromorphic")
        throw UsageError("series literal: unknown kind '" + kind + "'");
    const int count = analytic ? order + 1 : order;
    std::vector<Complex> c;
    c.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double re = 0.0, im = 0.0;
        if (!(in >> re >> im))
            throw UsageError("series literal: expected " + std::to_string(count) +
                             " coefficient lines");
        c.emplace_back(re, im);
    }
    if (analytic)
        return AnalyticSeries(std::move(c));
    return MeromorphicSeries(std::move(c));
}

inline void write_series(std::ostream& out, const AnalyticSeries& s) {
    const auto prec = out.precision(17); // round-trips doubles exactly
    out << "analytic " << s.order() << "\n";
    for (int n = 0; n <= s.order(); ++n)
        out << s.coeff(n).real() << " " << s.coeff(n).imag() << "\n";
    out.precision(prec);
}

inline void write_series(std::ostream& out, const MeromorphicSeries& f) {
    const auto prec = out.precision(17);
    out << "meromorphic " << f.order() << "\n";
    for (int k = 1; k <= f.order(); ++k)
        out << f.tail_coeff(k).real() << " " << f.tail_coeff(k).imag() << "\n";
    out.precision(prec);
}

} // namespace merosub
