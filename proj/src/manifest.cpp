#include "levi6/manifest.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "levi6/elliptic.hpp"
#include "levi6/hyperbolic.hpp"

namespace levi6 {

namespace {

using nlohmann::json;

Chart chart_from_json(const json& j, int orientation) {
    if (!j.is_array() || j.size() != 6)
        throw ManifestError("'chart' must be an array of 6 names");
    std::array<std::string, 6> names;
    for (std::size_t i = 0; i < 6; ++i) names[i] = j[i].get<std::string>();
    return Chart(names, orientation);
}

VectorField field_from_json(const json& j, const Chart& chart) {
    if (!j.is_array() || j.size() != 6)
        throw ManifestError("a vector field needs 6 component expressions");
    VectorField v;
    for (std::size_t i = 0; i < 6; ++i)
        v.comp[i] = parse_expr(j[i].get<std::string>(), chart);
    return v;
}

}  // namespace

Manifest parse_manifest(const json& j) {
    if (!j.is_object()) throw ManifestError("manifest must be a JSON object");
    Manifest m;
    int orientation = j.value("orientation", 1);
    if (orientation != 1 && orientation != -1)
        throw ManifestError("'orientation' must be +1 or -1");

    bool has_pde = j.contains("pde");
    bool has_frame = j.contains("frame");
    if (has_pde == has_frame)
        throw ManifestError("manifest needs exactly one of 'pde' or 'frame'");

    if (has_pde) {
        const json& p = j.at("pde");
        SolvedSystem sys;
        const json& sv = p.at("solved");
        const json& rhs = p.at("rhs");
        if (!sv.is_array() || sv.size() != 2 || !rhs.is_array() ||
            rhs.size() != 2)
            throw ManifestError("'pde' needs 'solved' and 'rhs', 2 entries each");
        for (std::size_t i = 0; i < 2; ++i) {
            sys.solved[i] = sv[i].get<std::string>();
            sys.rhs[i] = rhs[i].get<std::string>();
        }
        sys.orientation = orientation;
        m.pde = sys;
    } else {
        if (!j.contains("chart"))
            throw ManifestError("frame input requires 'chart'");
        Chart chart = chart_from_json(j.at("chart"), orientation);
        const json& fr = j.at("frame");
        const json& h = fr.at("h");
        const json& c = fr.at("complement");
        if (!h.is_array() || h.size() != 4 || !c.is_array() || c.size() != 2)
            throw ManifestError(
                "'frame' needs 'h' (4 fields) and 'complement' (2 fields)");
        Structure6 s;
        s.chart = chart;
        for (std::size_t i = 0; i < 4; ++i)
            s.h[i] = field_from_json(h[i], chart);
        for (std::size_t i = 0; i < 2; ++i)
            s.f[i] = field_from_json(c[i], chart);
        m.frame = s;
    }

    if (j.contains("points")) {
        for (const auto& p : j.at("points")) {
            if (!p.is_array() || p.size() != 6)
                throw ManifestError("each point needs 6 coordinates");
            Point pt;
            for (std::size_t i = 0; i < 6; ++i) pt[i] = p[i].get<double>();
            m.points.push_back(pt);
        }
    }
    m.random_points = j.value("random", 0);
    if (m.random_points < 0)
        throw ManifestError("'random' must be non-negative");
    m.seed = j.value("seed", kDefaultSeed);
    m.tol = j.value("tol", 1e-9);
    if (m.points.empty() && m.random_points == 0)
        throw ManifestError("manifest resolves to zero sample points");
    return m;
}

Manifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ManifestError("cannot open manifest '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ManifestError(std::string("manifest is not valid JSON: ") +
                            e.what());
    }
    return parse_manifest(j);
}

Structure6 manifest_structure(const Manifest& m) {
    if (m.pde) return build_jet_structure(*m.pde);
    return *m.frame;
}

std::vector<Point> resolve_points(const Manifest& m, const FrameCalculus& fc,
                                  const QuadraticForm<Expr>& q) {
    std::vector<Point> pts = m.points;
    if (m.random_points > 0) {
        std::mt19937_64 rng(m.seed);
        std::uniform_real_distribution<double> dist(-0.5, 0.5);
        int found = 0;
        long long attempts = 0;
        const long long max_attempts = 11LL * m.random_points;
        while (found < m.random_points && attempts < max_attempts) {
            ++attempts;
            Point pt;
            for (auto& x : pt) x = dist(rng);
            try {
                (void)classify(q, pt, m.tol);
                for (int i = 0; i < 6; ++i)
                    (void)fc.frame_field(i).at(pt);
            } catch (const EvalDomainError&) {
                continue;
            }
            pts.push_back(pt);
            ++found;
        }
        if (found < m.random_points)
            throw NumericalError(
                "could not draw enough evaluable sample points");
    }
    return pts;
}

namespace {

json point_json(const Point& pt) {
    json a = json::array();
    for (double x : pt) a.push_back(x);
    return a;
}

json field_json(const VectorField& v) {
    json a = json::array();
    for (const auto& c : v.comp) a.push_back(to_string(c));
    return a;
}

json frame_echo(const Structure6& s) {
    json h = json::array(), f = json::array();
    for (const auto& v : s.h) h.push_back(field_json(v));
    for (const auto& v : s.f) f.push_back(field_json(v));
    return json{{"h", h}, {"complement", f}};
}

json eval_matrix(const std::vector<std::vector<const Expr*>>& m,
                 const Point& pt) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const Expr* e : row) r.push_back(evaluate(*e, pt));
        rows.push_back(r);
    }
    return rows;
}

json elliptic_block(const FrameCalculus& fc, const LeviForm& L,
                    const QuadraticForm<Expr>& q,
                    const std::vector<Point>& pts, double tol,
                    std::uint64_t seed) {
    EllipticOptions opts;
    opts.tol = tol;
    opts.zt.seed = seed;
    auto inv = elliptic_invariants(fc, L, q, pts, opts);

    json per_point = json::array();
    for (std::size_t pi = 0; pi < pts.size(); ++pi) {
        const Point& pt = pts[pi];
        std::vector<std::vector<const Expr*>> jh(4), jq(2), k(4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                jh[static_cast<std::size_t>(r)].push_back(
                    &inv.J.J_H[static_cast<std::size_t>(r)]
                              [static_cast<std::size_t>(c)]);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                jq[static_cast<std::size_t>(r)].push_back(
                    &inv.J.J_Q[static_cast<std::size_t>(r)]
                              [static_cast<std::size_t>(c)]);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 2; ++c)
                k[static_cast<std::size_t>(r)].push_back(
                    &inv.J.K[static_cast<std::size_t>(r)]
                            [static_cast<std::size_t>(c)]);
        json s_comp = json::array();
        for (int c = 0; c < 2; ++c)
            for (int alpha = 0; alpha < 2; ++alpha)
                for (int a = 0; a < 4; ++a)
                    s_comp.push_back(
                        evaluate(inv.S.comp[static_cast<std::size_t>(c)]
                                           [static_cast<std::size_t>(alpha)]
                                           [static_cast<std::size_t>(a)],
                                 pt));
        per_point.push_back(json{{"point_index", pi},
                                 {"J_H", eval_matrix(jh, pt)},
                                 {"J_Q", eval_matrix(jq, pt)},
                                 {"K", eval_matrix(k, pt)},
                                 {"S", s_comp}});
    }
    return json{{"per_point", per_point},
                {"jl_residual", inv.jl_residual},
                {"max_S", inv.max_S},
                {"max_N", inv.max_N},
                {"flat", inv.flat}};
}

json hyperbolic_block(const FrameCalculus& fc, const LeviForm& L,
                      const QuadraticForm<Expr>& q,
                      const std::vector<Point>& pts, double tol,
                      std::uint64_t seed) {
    HyperbolicOptions opts;
    opts.tol = tol;
    opts.zt.seed = seed;
    auto inv = hyperbolic_invariants(fc, L, q, pts, opts);

    json split = json{
        {"h_plus", json::array({field_json(inv.split.h_plus[0]),
                                field_json(inv.split.h_plus[1])})},
        {"h_minus", json::array({field_json(inv.split.h_minus[0]),
                                 field_json(inv.split.h_minus[1])})},
        {"q_plus", json::array({to_string(inv.split.q_plus[0]),
                                to_string(inv.split.q_plus[1])})},
        {"q_minus", json::array({to_string(inv.split.q_minus[0]),
                                 to_string(inv.split.q_minus[1])})}};
    json per_point = json::array();
    for (std::size_t pi = 0; pi < pts.size(); ++pi) {
        const Point& pt = pts[pi];
        json sp = json::array(), sm = json::array();
        for (const auto& row : inv.S.s_plus)
            for (const auto& e : row) sp.push_back(evaluate(e, pt));
        for (const auto& row : inv.S.s_minus)
            for (const auto& e : row) sm.push_back(evaluate(e, pt));
        per_point.push_back(
            json{{"point_index", pi}, {"S_plus", sp}, {"S_minus", sm}});
    }
    return json{{"splitting", split},
                {"per_point", per_point},
                {"max_S_plus", inv.max_S_plus},
                {"max_S_minus", inv.max_S_minus},
                {"t_plus_integrable", inv.t_plus_integrable},
                {"t_minus_integrable", inv.t_minus_integrable},
                {"flat", inv.flat}};
}

}  // namespace

CommandResult run_manifest_command(const std::string& command,
                                   const Manifest& manifest,
                                   const RunOptions& run_opts) {
    Manifest m = manifest;
    if (run_opts.tol) m.tol = *run_opts.tol;
    if (run_opts.seed) m.seed = *run_opts.seed;
    if (run_opts.random_points) m.random_points = *run_opts.random_points;

    Structure6 s = manifest_structure(m);
    ExprOps ops;
    ops.zt.seed = m.seed;
    FrameCalculus fc(s, ops);
    LeviForm L = levi_form(fc);
    QuadraticForm<Expr> q = levi_quadratic(L);
    std::vector<Point> pts = resolve_points(m, fc, q);

    json report;
    report["tool"] = "levi6";
    report["seed"] = m.seed;
    report["tol"] = m.tol;
    json chart_names = json::array();
    for (const auto& n : s.chart.names) chart_names.push_back(n);
    report["chart"] = chart_names;
    report["orientation"] = s.chart.orientation;
    report["frame"] = frame_echo(s);
    json pts_json = json::array();
    for (const auto& pt : pts) pts_json.push_back(point_json(pt));
    report["points"] = pts_json;

    json cls_json = json::array();
    bool any_degenerate = false;
    std::optional<StructureClass> kind;
    bool mixed = false;
    std::ostringstream summary;
    for (std::size_t pi = 0; pi < pts.size(); ++pi) {
        auto c = classify(q, pts[pi], m.tol);
        cls_json.push_back(json{{"point_index", pi},
                                {"kind", to_string(c.kind)},
                                {"a", c.a},
                                {"b", c.b},
                                {"c", c.c},
                                {"delta", c.delta}});
        if (c.kind == StructureClass::Degenerate) any_degenerate = true;
        if (!kind)
            kind = c.kind;
        else if (*kind != c.kind)
            mixed = true;
    }
    report["classification"] = cls_json;
    summary << "classification: "
            << (mixed ? "mixed" : to_string(*kind)) << " (" << pts.size()
            << " points)\n";

    CommandResult out;
    if (any_degenerate || mixed) {
        out.exit_code = kExitDegenerate;
        out.report = report;
        out.summary = summary.str() +
                      (mixed ? "structure type is not uniform on the sample set\n"
                             : "degenerate structure\n");
        return out;
    }

    bool want_invariants =
        command == "invariants" || command == "check-flat" || command == "report";
    bool flat = false;
    if (want_invariants) {
        if (*kind == StructureClass::Elliptic) {
            json block = elliptic_block(fc, L, q, pts, m.tol, m.seed);
            flat = block.at("flat").get<bool>();
            report["elliptic"] = block;
            summary << "max |S| = " << block.at("max_S").get<double>()
                    << ", max |N| = " << block.at("max_N").get<double>()
                    << "\n";
        } else {
            json block = hyperbolic_block(fc, L, q, pts, m.tol, m.seed);
            flat = block.at("flat").get<bool>();
            report["hyperbolic"] = block;
            summary << "max |S+| = " << block.at("max_S_plus").get<double>()
                    << ", max |S-| = " << block.at("max_S_minus").get<double>()
                    << "\n";
        }
        report["flat"] = flat;
        summary << "flat: " << (flat ? "yes" : "no") << "\n";
    }

    out.report = report;
    out.summary = summary.str();
    if (command == "check-flat" && !flat) out.exit_code = kExitNotFlat;
    return out;
}

}  // namespace levi6
