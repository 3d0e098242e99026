// taunaf: width-w tau-adic non-adjacent forms to imaginary quadratic bases.
// Subcommands cover digit-set construction, expansion, block statistics,
// value bounds, cell operators, fractal rendering, the boundary-dimension
// bound, the digit census and the Koblitz-curve demo.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "taunaf/blockstats.hpp"
#include "taunaf/bounds.hpp"
#include "taunaf/census.hpp"
#include "taunaf/cells.hpp"
#include "taunaf/fractal.hpp"
#include "taunaf/koblitz.hpp"
#include "taunaf/naf.hpp"

using json = nlohmann::json;
using namespace taunaf;

namespace {

struct CommonOpts {
    std::int64_t p = 1;
    std::int64_t q = 2;
    int w = 2;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out_path;
    bool as_json = false;
    bool as_csv = false;
};

void add_order_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-p", o.p, "linear coefficient of tau^2 - p tau + q");
    cmd->add_option("-q", o.q, "constant coefficient (norm of tau)");
    cmd->add_option("-w", o.w, "window width, >= 2");
}

void add_output_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_flag("--json", o.as_json, "emit JSON");
    cmd->add_flag("--csv", o.as_csv, "emit CSV");
    cmd->add_option("-o,--out", o.out_path, "output file (default stdout)");
}

std::ostream& open_out(const CommonOpts& o, std::ofstream& file) {
    if (o.out_path.empty()) return std::cout;
    file.open(o.out_path);
    if (!file) throw std::runtime_error("cannot open output file " + o.out_path);
    return file;
}

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1)
        os << "/" << boost::multiprecision::denominator(r);
    return os.str();
}

std::string real_str(double x) {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

RingElement parse_element(const std::string& text, const IQOrder& ord) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--z expects 'a,b' for a + b*tau");
    return RingElement(Integer(text.substr(0, comma)), Integer(text.substr(comma + 1)), ord);
}

std::string word_str(const NafWord& word) {
    if (word.empty()) return "0";
    const DigitSetPtr& ds = word.digit_set();
    bool alias = true;  // digits printable as 1 / -1
    for (std::size_t i = 1; i < ds->digits().size(); ++i) {
        const RingElement& d = ds->digits()[i];
        if (!(d.b == 0 && (d.a == 1 || d.a == -1))) alias = false;
    }
    std::ostringstream os;
    int hi = std::max(word.support().rbegin()->first, -1);
    int lo = std::min(word.support().begin()->first, 0);
    for (int i = hi; i >= lo; --i) {
        if (i == -1) os << '.';
        const RingElement* d = word.digit_at(i);
        if (!d) {
            os << (alias ? "0" : " 0");
            continue;
        }
        if (alias) os << (d->a == 1 ? "1" : "-1");
        else os << " (" << d->a << "," << d->b << ")";
    }
    return os.str();
}

int cmd_digitset(const CommonOpts& o, bool svg) {
    IQOrder ord = make_order(o.p, o.q);
    DigitSetPtr ds = build_digit_set(ord, o.w);
    std::ofstream file;
    std::ostream& out = open_out(o, file);

    if (svg) {
        out << render_svg(ds, o.w, RenderMode::Plain);
        return 0;
    }
    if (ds->boundary_convention_warning())
        std::cerr << "note: p=0, q=2 is sensitive to the restricted-cell convention; "
                     "this build uses the canonical one\n";
    if (o.as_json) {
        json j;
        j["p"] = o.p;
        j["q"] = o.q;
        j["w"] = o.w;
        j["cardinality"] = ds->size();
        j["digits"] = json::array();
        for (const auto& d : ds->digits()) {
            j["digits"].push_back({{"a", d.a.str()}, {"b", d.b.str()}, {"norm", norm(d).str()}});
        }
        out << j.dump(2) << "\n";
    } else {
        out << "a,b,norm\n";
        for (const auto& d : ds->digits()) out << d.a << ',' << d.b << ',' << norm(d) << "\n";
    }
    return 0;
}

int cmd_expand(const CommonOpts& o, const std::string& z_text, int approx_ell,
               const std::string& point_text) {
    IQOrder ord = make_order(o.p, o.q);
    DigitSetPtr ds = build_digit_set(ord, o.w);
    std::ofstream file;
    std::ostream& out = open_out(o, file);

    NafWord word;
    if (!point_text.empty()) {
        auto comma = point_text.find(',');
        if (comma == std::string::npos) throw CLI::ValidationError("--point expects 'x,y' rationals");
        AlgebraicPoint pt(QSqrtD(Rational(point_text.substr(0, comma)), 0, ord.D),
                          QSqrtD(Rational(point_text.substr(comma + 1)), 0, ord.D));
        word = approx_expand(ds, pt, approx_ell);
    } else {
        word = expand(ds, parse_element(z_text, ord));
    }

    NafValue val = value(word);
    if (o.as_json) {
        json j;
        j["word"] = word_str(word);
        j["weight"] = weight(word);
        j["left_length"] = word.left_length();
        j["right_length"] = word.right_length();
        j["value_num"] = {{"a", val.num.a.str()}, {"b", val.num.b.str()}};
        j["value_scale"] = val.rlen;
        j["valid"] = validate(word);
        out << j.dump(2) << "\n";
    } else {
        out << "word: " << word_str(word) << "\n";
        out << "weight: " << weight(word) << "  left-length: " << word.left_length()
            << "  right-length: " << word.right_length() << "\n";
        out << "value: (" << val.num.a << "," << val.num.b << ") / tau^" << val.rlen << "\n";
        out << "naf-valid: " << (validate(word) ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_stats(const CommonOpts& o, int n, const std::string& digit_text) {
    IQOrder ord = make_order(o.p, o.q);
    BlockStats bs(ord, o.w);
    std::ofstream file;
    std::ostream& out = open_out(o, file);
    auto mo = bs.occurrence_moments(n);
    (void)digit_text;  // moments are identical for every nonzero digit

    if (o.as_csv) {
        out << "n,count,mean,variance,e_w,v_w,rho\n";
        out << n << ',' << bs.count_nafs(n) << ',' << rational_str(mo.mean) << ','
            << rational_str(mo.variance) << ',' << rational_str(bs.e_w()) << ','
            << rational_str(bs.v_w()) << ',' << rational_str(bs.rho()) << "\n";
    } else {
        out << "C_" << n << " = " << bs.count_nafs(n) << "\n";
        out << "E[X_n] = " << rational_str(mo.mean) << " ~ " << real_str(to_double(mo.mean)) << "\n";
        out << "V[X_n] = " << rational_str(mo.variance) << " ~ " << real_str(to_double(mo.variance))
            << "\n";
        out << "e_w = " << rational_str(bs.e_w()) << "  v_w = " << rational_str(bs.v_w())
            << "  rho = " << rational_str(bs.rho()) << "\n";
        out << "deviation of E from e_w*n + const: "
            << real_str(to_double(mo.mean - bs.e_w() * n - bs.expectation_constant())) << "\n";
    }
    return 0;
}

int cmd_bounds(const CommonOpts& o, bool tables) {
    std::ofstream file;
    std::ostream& out = open_out(o, file);
    if (!tables) {
        IQOrder ord = make_order(o.p, o.q);
        DigitSetPtr ds = build_digit_set(ord, o.w);
        BoundsProfile prof = compute_profile(ds);
        out << "nu = " << real_str(prof.nu) << (prof.problematic ? "  (problematic)" : "") << "\n";
        out << "f_U = " << real_str(prof.f_u) << "\n";
        out << "f_L = " << real_str(prof.f_l) << "\n";
        if (prof.upper)
            out << "upper search: ell = " << prof.upper->ell << "  |tau|^-ell f_U = "
                << real_str(prof.upper->scaled_f_u) << "  eps = " << real_str(prof.upper->eps) << "\n";
        if (prof.lower)
            out << "lower search: ell = " << prof.lower->ell << "  |tau|^-ell f_U = "
                << real_str(prof.lower->scaled_f_u) << "  nu~ = " << real_str(prof.lower->nu_tilde)
                << "\n";
        return 0;
    }

    // regenerate the three problematic-grid tables
    struct Row {
        std::int64_t q, p;
        int w;
    };
    std::vector<Row> grid;
    for (std::int64_t p = -2; p <= 2; ++p) grid.push_back({2, p, 2});
    for (std::int64_t p = -2; p <= 2; ++p) grid.push_back({2, p, 3});
    for (std::int64_t p = -3; p <= 3; ++p) grid.push_back({3, p, 2});
    for (std::int64_t p = -3; p <= 3; ++p) grid.push_back({4, p, 2});

    out << "upper bound (ell, |tau|^-ell f_U, eps):\n";
    out << "q,p,w,ell,scaled_fU,eps\n";
    std::vector<DigitSetPtr> sets;
    for (const auto& r : grid) sets.push_back(build_digit_set(make_order(r.p, r.q), r.w));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto res = upper_search(sets[i]);
        out << grid[i].q << ',' << grid[i].p << ',' << grid[i].w << ',' << res.ell << ','
            << real_str(res.scaled_f_u) << ',' << real_str(res.eps) << "\n";
    }
    out << "approx containment (k, 2|tau|^-k f_U, eps, valid for ell <= k):\n";
    out << "q,p,w,k,radius,eps,valid\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto res = approx_containment_search(sets[i]);
        out << grid[i].q << ',' << grid[i].p << ',' << grid[i].w << ',' << res.k << ','
            << real_str(res.radius) << ',' << real_str(res.eps) << ','
            << (res.valid_below_k ? "true" : "false") << "\n";
    }
    out << "lower bound (ell, |tau|^-ell f_U, nu~):\n";
    out << "q,p,w,ell,scaled_fU,nu_tilde\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto res = lower_search(sets[i]);
        out << grid[i].q << ',' << grid[i].p << ',' << grid[i].w << ',' << res.ell << ','
            << real_str(res.scaled_f_u) << ',' << real_str(res.nu_tilde) << "\n";
    }
    return 0;
}

Region parse_region(const std::string& disc_text, const std::string& poly_text, const IQOrder& ord) {
    if (!poly_text.empty()) {
        std::vector<AlgebraicPoint> verts;
        std::stringstream ss(poly_text);
        std::string item;
        while (std::getline(ss, item, ';')) {
            auto comma = item.find(',');
            if (comma == std::string::npos) throw CLI::ValidationError("--polygon expects x1,y1;x2,y2;...");
            verts.emplace_back(QSqrtD(Rational(item.substr(0, comma)), 0, ord.D),
                               QSqrtD(Rational(item.substr(comma + 1)), 0, ord.D));
        }
        return Region::polygon(std::move(verts));
    }
    std::stringstream ss(disc_text);
    std::string cx, cy, r;
    if (!std::getline(ss, cx, ',') || !std::getline(ss, cy, ',') || !std::getline(ss, r, ','))
        throw CLI::ValidationError("--disc expects cx,cy,r");
    Rational rr(r);
    return Region::disc(AlgebraicPoint(QSqrtD(Rational(cx), 0, ord.D), QSqrtD(Rational(cy), 0, ord.D)),
                        rr * rr);
}

int cmd_cells(const CommonOpts& o, const std::string& op, const std::string& disc_text,
              const std::string& poly_text, int scale_j) {
    IQOrder ord = make_order(o.p, o.q);
    VoronoiCell cell(ord);
    Region region = parse_region(disc_text, poly_text, ord);
    std::ofstream file;
    std::ostream& out = open_out(o, file);

    if (op == "card") {
        out << card(cell, region, scale_j) << "\n";
        return 0;
    }
    CellSet set;
    if (op == "floor") set = floor_cells(cell, region, scale_j);
    else if (op == "ceil") set = ceil_cells(cell, region, scale_j);
    else if (op == "cover") set = cover_cells(cell, region, scale_j);
    else if (op == "boundary") set = boundary_cells(cell, region, scale_j);
    else throw CLI::ValidationError("--op must be floor|ceil|cover|boundary|card");

    out << "a,b\n";
    for (const auto& z : set.centers) out << z.a << ',' << z.b << "\n";
    return 0;
}

int cmd_render(const CommonOpts& o, int ell, const std::string& mode) {
    IQOrder ord = make_order(o.p, o.q);
    DigitSetPtr ds = build_digit_set(ord, o.w);
    RenderMode rm = (mode == "digits") ? RenderMode::Digits : RenderMode::Plain;
    std::ofstream file;
    std::ostream& out = open_out(o, file);
    out << render_svg(ds, ell, rm);
    return 0;
}

int cmd_dimension(const CommonOpts& o) {
    IQOrder ord = make_order(o.p, o.q);
    DigitSetPtr ds = build_digit_set(ord, o.w);
    DimensionResult res = dim_upper_bound(ds);
    std::ofstream file;
    std::ostream& out = open_out(o, file);
    out << "k = " << res.k << "  states = " << res.states << "\n";
    out << "dominant eigenvalue = " << std::setprecision(10) << res.eigenvalue << "\n";
    out << "sigma = " << res.sigma << "  (exact sign check: " << (res.sign_check ? "ok" : "FAILED")
        << ")\n";
    out << "dim_H boundary(F) <= " << res.dim_bound << "\n";
    out << "series growth rate = " << res.growth_rate << "\n";
    return 0;
}

int cmd_census(const CommonOpts& o, const std::string& disc_text, const std::string& n_text,
               const std::string& scan_text) {
    IQOrder ord = make_order(o.p, o.q);
    DigitSetPtr ds = build_digit_set(ord, o.w);
    Region region = parse_region(disc_text, "", ord);
    std::ofstream file;
    std::ostream& out = open_out(o, file);

    if (!scan_text.empty()) {
        std::stringstream ss(scan_text);
        std::string base_s, oct_s, ph_s;
        if (!std::getline(ss, base_s, ',') || !std::getline(ss, oct_s, ',') ||
            !std::getline(ss, ph_s, ','))
            throw CLI::ValidationError("--scan expects base,octaves,phases");
        double base = std::stod(base_s);
        int octaves = std::stoi(oct_s);
        int phases_n = std::stoi(ph_s);
        std::vector<double> phases;
        for (int i = 0; i < phases_n; ++i) phases.push_back(static_cast<double>(i) / phases_n);
        auto rows = fluctuation_scan(ds, region, base, octaves, phases, 1e9, 1, o.threads);
        out << "m,f,N,psi_hat\n";
        for (const auto& r : rows)
            out << r.octave << ',' << r.phase << ',' << real_str(r.n) << ',' << real_str(r.psi_hat)
                << "\n";
        return 0;
    }

    Rational n(n_text);
    CensusResult res = count_digits(ds, region, n, o.threads);
    out << "digit_a,digit_b,count,psi_hat\n";
    for (std::size_t i = 1; i < ds->size(); ++i) {
        out << ds->digits()[i].a << ',' << ds->digits()[i].b << ',' << res.digit_counts[i] << ','
            << real_str(res.psi_hat[i]) << "\n";
    }
    out << "# lattice points: " << res.lattice_points << ", total weight: " << res.total_weight
        << ", main term per digit: " << real_str(res.main_term)
        << ", max index: " << res.max_support_index << "\n";
    return 0;
}

int cmd_curve_demo(const CommonOpts& o, int m, int a, int trials) {
    KoblitzCurve curve(BinaryField::standard(m), a);
    IQOrder ord = make_order(curve.mu(), 2);
    Rng rng(o.seed);
    std::ofstream file;
    std::ostream& out = open_out(o, file);

    out << "w,mean_adds,mean_length,predicted_density,mean_adds_per_length,precomp\n";
    for (int w = 2; w <= std::max(2, o.w); ++w) {
        DigitSetPtr ds = build_digit_set(ord, w);
        BlockStats bs(ord, w);
        double density = to_double(bs.e_w() * Rational(bs.num_nonzero_digits()));
        double sum_adds = 0, sum_len = 0;
        for (int t = 0; t < trials; ++t) {
            RingElement z(rng.range(-(1 << 15), 1 << 15), rng.range(-(1 << 15), 1 << 15), ord);
            CurvePoint p = curve.random_point(rng);
            ScalarMulStats st = scalar_mul_ztau(curve, ds, z, p);
            TAUNAF_ASSERT(st.result == curve.scalar_ztau_ref(z, p), "curve-demo: result mismatch");
            sum_adds += st.adds;
            sum_len += st.length;
        }
        out << w << ',' << real_str(sum_adds / trials) << ',' << real_str(sum_len / trials) << ','
            << real_str(density) << ',' << real_str(sum_adds / sum_len) << ','
            << (ds->size() - 1) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"width-w tau-adic non-adjacent forms to imaginary quadratic bases"};
    app.require_subcommand(1);
    CommonOpts o;
    app.add_option("--seed", o.seed, "deterministic seed")->capture_default_str();
    app.add_option("--threads", o.threads, "worker threads (0 = all cores)");

    auto* c_digit = app.add_subcommand("digitset", "construct the minimal-norm digit set");
    add_order_opts(c_digit, o);
    add_output_opts(c_digit, o);
    bool digit_svg = false;
    c_digit->add_flag("--svg", digit_svg, "emit the digit-cell picture as SVG");

    auto* c_expand = app.add_subcommand("expand", "expand an element of Z[tau]");
    add_order_opts(c_expand, o);
    add_output_opts(c_expand, o);
    std::string z_text = "1,0", point_text;
    int approx_ell = 10;
    c_expand->add_option("--z", z_text, "element a,b meaning a + b*tau");
    c_expand->add_option("--point", point_text, "rational point x,y for approximate expansion");
    c_expand->add_option("--ell", approx_ell, "fractional resolution for --point");

    auto* c_stats = app.add_subcommand("stats", "full block length statistics");
    add_order_opts(c_stats, o);
    add_output_opts(c_stats, o);
    int stats_n = 20;
    std::string digit_text;
    c_stats->add_option("-n", stats_n, "word length");
    c_stats->add_option("--digit", digit_text, "digit a,b (moments are digit-independent)");

    auto* c_bounds = app.add_subcommand("bounds", "value bounds and problem-case searches");
    add_order_opts(c_bounds, o);
    add_output_opts(c_bounds, o);
    bool tables = false;
    c_bounds->add_flag("--tables", tables, "regenerate the problematic-grid tables");

    auto* c_cells = app.add_subcommand("cells", "cell rounding operators");
    add_order_opts(c_cells, o);
    add_output_opts(c_cells, o);
    std::string cells_op = "card", disc_text = "0,0,1", poly_text;
    int scale_j = 0;
    c_cells->add_option("--op", cells_op, "floor|ceil|cover|boundary|card");
    c_cells->add_option("--disc", disc_text, "disc cx,cy,r");
    c_cells->add_option("--polygon", poly_text, "polygon x1,y1;x2,y2;...");
    c_cells->add_option("--scale", scale_j, "tau-power scale j");

    auto* c_render = app.add_subcommand("render", "SVG of the fractional-value cells");
    add_order_opts(c_render, o);
    add_output_opts(c_render, o);
    int render_ell = 6;
    std::string render_mode = "digits";
    c_render->add_option("-l,--ell", render_ell, "resolution (cells = C_ell)");
    c_render->add_option("--mode", render_mode, "digits|plain");

    auto* c_dim = app.add_subcommand("dimension", "boundary dimension upper bound");
    add_order_opts(c_dim, o);
    add_output_opts(c_dim, o);

    auto* c_census = app.add_subcommand("census", "digit census over a scaled region");
    add_order_opts(c_census, o);
    add_output_opts(c_census, o);
    std::string census_disc = "0,0,1", census_n = "32", scan_text;
    c_census->add_option("--disc", census_disc, "disc cx,cy,r");
    c_census->add_option("-N", census_n, "scale factor (rational)");
    c_census->add_option("--scan", scan_text, "fluctuation scan base,octaves,phases");

    auto* c_curve = app.add_subcommand("curve-demo", "Frobenius-and-add on the binary Koblitz curve");
    int curve_m = 11, curve_a = 1, curve_trials = 100;
    c_curve->add_option("-m", curve_m, "field extension degree (7, 11 or 19)");
    c_curve->add_option("-a", curve_a, "curve parameter a in {0,1}");
    c_curve->add_option("-w", o.w, "largest window width to benchmark");
    c_curve->add_option("--trials", curve_trials, "random trials per w");
    add_output_opts(c_curve, o);
    c_curve->add_option("--seed", o.seed, "deterministic seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_digit->parsed()) return cmd_digitset(o, digit_svg);
        if (c_expand->parsed()) return cmd_expand(o, z_text, approx_ell, point_text);
        if (c_stats->parsed()) return cmd_stats(o, stats_n, digit_text);
        if (c_bounds->parsed()) return cmd_bounds(o, tables);
        if (c_cells->parsed()) return cmd_cells(o, cells_op, disc_text, poly_text, scale_j);
        if (c_render->parsed()) return cmd_render(o, render_ell, render_mode);
        if (c_dim->parsed()) return cmd_dimension(o);
        if (c_census->parsed()) return cmd_census(o, census_disc, census_n, scan_text);
        if (c_curve->parsed()) return cmd_curve_demo(o, curve_m, curve_a, curve_trials);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
