#pragma once

#include <critsurf/embedded_graph.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>
#include <vector>

namespace critsurf {

using Rational = boost::multiprecision::cpp_rational;

/// Always "p/q" with q > 0, so integers print as "n/1".
std::string to_string(const Rational& r);
/// Accepts "p/q" or an integer; throws ParseError.
Rational parse_rational(const std::string& text);

struct SurfArgs {
    long g = 0;
    long t = 0;
    long t0 = 0;
    long t1 = 0;
};

Rational s(int l);
long gen(const SurfArgs& a);
long surf(const SurfArgs& a);
inline long surf(long g, long t, long t0, long t1) { return surf(SurfArgs{g, t, t0, t1}); }

/// s(|f|) for open 2-cell faces, |f| otherwise; throws RingFace.
Rational face_weight(const EmbeddedGraph& g, int f);
/// Sum over internal faces.
Rational total_weight(const EmbeddedGraph& g);
/// Arguments (g, |R|, t0, t1) of the whole graph.
SurfArgs surf_args(const EmbeddedGraph& g);
/// surf(g(Π_f), a, a0, a1): a walks, a0/a1 lone weak/non-weak vertex-ring walks.
long surf_face(const EmbeddedGraph& g, int f);

Rational default_eta();
/// 1600·η/s(5).
Rational default_kappa(const Rational& eta);

/// Ordered key/value lines, values exact.
struct Report {
    std::vector<std::pair<std::string, std::string>> fields;
    bool verdict = true;

    void add(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }
    void add(const std::string& key, const Rational& value) { add(key, to_string(value)); }
    void add(const std::string& key, long value) { add(key, std::to_string(value)); }
    std::string to_text() const;
};

/// Per-face weights and the global quantities of the weight calculus.
Report weight_report(const EmbeddedGraph& g, const Rational& eta);

/// Σ(|f|−4) ≤ κ(g+t+c−1) for a 4-critical graph without rings; throws NotCritical.
/// Also reports the least κ the instance needs.
Report check_main_inequality(const EmbeddedGraph& g, const Rational& kappa);

/// w(G,R) ≤ η·surf(g,|R|,t0,t1) + ℓ(R). Throws HypothesisViolated unless G is R-critical,
/// triangle-free and has no non-contractible 4-cycle.
Report check_maingen_inequality(const EmbeddedGraph& g, const Rational& eta, int jobs = 1);

struct SurfAudit {
    struct Clause {
        char name = 'a';
        long checked = 0;
        std::vector<std::string> failures; ///< offending tuples
    };
    std::vector<Clause> clauses; ///< (a), (b), (c), (d)
    bool ok() const;
    std::string to_text() const;
};

/// Exhaustive check of the four surf inequalities over g ≤ max_g, t ≤ max_t. Tuples
/// where some surf argument falls outside t ≥ t0 + t1 are not admissible and skipped.
SurfAudit surfineq_audit(int max_g, int max_t);

} // namespace critsurf
