#include "bandgas/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

#include "bandgas/asymptotics.hpp"
#include "bandgas/errors.hpp"
#include "bandgas/finiten.hpp"
#include "bandgas/geometry.hpp"
#include "bandgas/io.hpp"
#include "bandgas/limitkernels.hpp"
#include "bandgas/parallel.hpp"
#include "bandgas/sampler.hpp"
#include "bandgas/spectra.hpp"
#include "bandgas/ward.hpp"

namespace bandgas::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;
namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string f;
    std::istringstream in(s);
    while (std::getline(in, f, sep)) out.push_back(trim(f));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

int parse_int(const std::string& s) {
    double v = parse_double(s);
    if (v != std::floor(v) || std::fabs(v) > 2e9) throw DomainError("not an integer: '" + s + "'");
    return static_cast<int>(v);
}

std::string tag(double x) {
    if (std::isinf(x)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

// ---- what is being evaluated: a finite-N ensemble or a limiting kernel ----

struct Params {
    std::string family;
    int N = 100;
    std::string c = "1";
    double nu = 0.0;
    double a = 1.0;
    std::optional<double> alpha;
    int d = 1;
    double beta = 1.0;
};

struct Target {
    bool ensemble = false;
    EnsembleSpec spec;
    LimitFamily limit;
    bool c_infinite = false;
};

const std::map<std::string, std::string>& aliases() {
    static const std::map<std::string, std::string> m = {
        {"fks", "fks_bulk"},           {"bender", "bender_edge"},   {"hardedge", "hardedge_bulk"},
        {"hard_edge", "hardedge_bulk"}, {"osborn", "alue_edge"},     {"bessel", "planar_bessel"},
        {"chiral", "chiral_edge"},     {"induced", "induced_bulk"}, {"ml", "ml_insertion"},
        {"berezin_ml", "ml_insertion"}};
    return m;
}

bool is_ensemble_name(const std::string& s) {
    try {
        parse_family(s);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

Target resolve(const Params& p) {
    if (p.family.empty()) throw DomainError("--family is required");
    Target t;
    double c = parse_double(p.c);
    if (is_ensemble_name(p.family)) {
        t.ensemble = true;
        t.spec.family = parse_family(p.family);
        t.spec.N = p.N;
        t.spec.c = c;
        t.spec.nu = p.nu;
        t.spec.beta = p.beta;
        if (t.spec.family == Family::alue_alpha) t.spec.alpha = p.alpha.value_or(0.0);
        if (t.spec.family == Family::chiral_d) t.spec.d = p.d;
        t.spec.validate();
        return t;
    }
    auto it = aliases().find(p.family);
    try {
        t.limit.kind = parse_limit_kind(it == aliases().end() ? p.family : it->second);
    } catch (const DomainError&) {
        throw DomainError("unknown ensemble family or limiting kernel: " + p.family);
    }
    t.limit.a = p.a;
    t.limit.nu = p.nu;
    t.limit.d = p.d;
    if (std::isinf(c) && c > 0) {
        if (t.limit.kind != LimitKind::bender_edge && t.limit.kind != LimitKind::chiral_edge)
            throw DomainError("c = inf is only defined for bender_edge and chiral_edge");
        t.c_infinite = true;
        t.limit.c = 1.0;
    } else {
        t.limit.c = c;
    }
    t.limit.validate();
    return t;
}

double target_R(const Target& t, cplx z) {
    if (t.ensemble) return onepoint(t.spec, z);
    if (t.c_infinite) {
        if (t.limit.kind == LimitKind::bender_edge) return erfc_R(z);
        return chiral_edge_R_infinity(t.limit.nu, t.limit.d, z);
    }
    return limit_R(t.limit, z);
}

bool line_kind(LimitKind k) { return k == LimitKind::sine || k == LimitKind::airy || k == LimitKind::bessel_line; }

double line_K(const LimitFamily& f, double x, double y) {
    switch (f.kind) {
        case LimitKind::sine: return sine_K(x, y);
        case LimitKind::airy: return airy_K(x, y);
        case LimitKind::bessel_line: return bessel_K_line(f.nu, x, y);
        default: throw DomainError("not a line kernel");
    }
}

// ---- metadata and output ----

struct Meta {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> extra;

    void add(const std::string& k, const std::string& v) { extra.emplace_back(k, v); }
    void add(const std::string& k, double v) { extra.emplace_back(k, format_double(v)); }

    std::vector<std::string> lines() const {
        std::vector<std::string> out{" bandgas " + std::string(kVersion), " command=" + command};
        for (const auto& [k, v] : config) out.push_back(" config." + k + "=" + v);
        out.push_back(" seed=" + std::to_string(seed));
        for (const auto& [k, v] : extra) out.push_back(" " + k + "=" + v);
        return out;
    }

    ojson json() const {
        ojson j;
        j["version"] = kVersion;
        j["command"] = command;
        ojson c = ojson::object();
        for (const auto& [k, v] : config) c[k] = v;
        j["config"] = c;
        j["seed"] = seed;
        for (const auto& [k, v] : extra) j[k] = v;
        return j;
    }
};

Meta make_meta(const std::string& command, const CLI::App* sub, std::uint64_t seed) {
    Meta m;
    m.command = command;
    m.seed = seed;
    for (const CLI::Option* opt : sub->get_options()) {
        std::string name = opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames().front();
        // the output location is not part of the result
        if (name == "help" || name == "config" || name == "out" || name == "out-dir" || name.empty()) continue;
        std::string value;
        if (opt->get_expected_min() == 0) {
            value = opt->count() > 0 ? "true" : "false";
        } else if (opt->count() > 0) {
            value = opt->results().back();  // later occurrences override earlier ones
        } else {
            value = opt->get_default_str();
        }
        m.config.emplace_back(name, value);
    }
    return m;
}

ojson table_json(const Table& t, const Meta& m) {
    ojson j;
    j["meta"] = m.json();
    j["columns"] = t.columns;
    ojson rows = ojson::array();
    for (const auto& r : t.rows) rows.push_back(r);  // NaN becomes null
    j["rows"] = rows;
    return j;
}

void emit(Table t, const Meta& m, const std::string& path, const std::string& format) {
    if (format == "json") {
        write_atomic(path, table_json(t, m).dump(1) + "\n");
        return;
    }
    if (format != "csv") throw DomainError("unknown --format " + format);
    auto lines = m.lines();
    t.meta.insert(t.meta.begin(), lines.begin(), lines.end());
    write_atomic(path, to_csv(t));
}

// value per grid point, NaN where the function is undefined there
template <class F>
Table grid_table(const GridSpec& g, const std::string& column, F&& f, Meta& meta) {
    Table t;
    t.columns = {"x", "y", column};
    std::size_t n = static_cast<std::size_t>(g.x.n) * g.y.n;
    std::vector<double> v(n);
    std::vector<char> bad(n, 0);
    parallel_for(n, [&](std::size_t idx) {
        int i = static_cast<int>(idx % g.x.n), j = static_cast<int>(idx / g.x.n);
        try {
            v[idx] = f(cplx(g.x.at(i), g.y.at(j)));
        } catch (const DomainError&) {
            v[idx] = std::nan("");
            bad[idx] = 1;
        }
    });
    t.rows.reserve(n);
    for (std::size_t idx = 0; idx < n; ++idx)
        t.rows.push_back({g.x.at(static_cast<int>(idx % g.x.n)), g.y.at(static_cast<int>(idx / g.x.n)), v[idx]});
    long undefined = std::count(bad.begin(), bad.end(), 1);
    if (undefined) meta.add("undefined_points", std::to_string(undefined));
    return t;
}

template <class F>
Table line_table(const Range& r, const std::string& column, F&& f) {
    Table t;
    t.columns = {"x", column};
    for (int i = 0; i < r.n; ++i) {
        double x = r.at(i), v;
        try {
            v = f(x);
        } catch (const DomainError&) {
            v = std::nan("");
        }
        t.rows.push_back({x, v});
    }
    return t;
}

Table cloud_table(const std::vector<cplx>& pts) {
    Table t;
    t.columns = {"re", "im"};
    for (cplx z : pts) t.rows.push_back({z.real(), z.imag()});
    return t;
}

std::string with_suffix(const std::string& path, const std::string& suffix, const std::string& ext = "") {
    fs::path p(path);
    std::string e = ext.empty() ? p.extension().string() : ext;
    return (p.parent_path() / (p.stem().string() + suffix + e)).string();
}

void add_params(CLI::App* s, Params& p, bool with_N = true) {
    s->add_option("--family", p.family, "ensemble family or limiting kernel");
    if (with_N) s->add_option("--N", p.N, "matrix size");
    s->add_option("--c", p.c, "band parameter (inf allowed for bender_edge, chiral_edge)");
    s->add_option("--nu", p.nu, "Laguerre/Bessel order");
    s->add_option("--a", p.a, "strip half-width for fks_bulk and hardedge_bulk");
    s->add_option("--alpha", p.alpha, "alue_alpha exponent");
    s->add_option("--d", p.d, "power in the chiral d-family");
    s->add_option("--beta", p.beta, "inverse temperature");
}

// ---- commands ----

struct Common {
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 0;
    std::string config;
};

void add_common(CLI::App* s, Common& c, const std::string& default_out) {
    c.out = default_out;
    if (!default_out.empty()) s->add_option("-o,--out", c.out, "output path, - for stdout");
    s->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--seed", c.seed, "random seed");
    s->add_option("--config", c.config, "file of key=value lines");
}

void cmd_density(const CLI::App* sub, const Params& p, const Common& c, const std::string& grid_s,
                 std::optional<double> rescale_p) {
    Target t = resolve(p);
    GridSpec g = parse_grid(grid_s);
    Meta m = make_meta("density", sub, c.seed);
    m.add("target", t.ensemble ? family_name(t.spec.family) : limit_kind_name(t.limit.kind));
    Table tab;
    if (rescale_p) {
        if (!t.ensemble) throw DomainError("--p applies to ensemble families only");
        tab = grid_table(g, "R", [&](cplx z) { return rescaled_onepoint(t.spec, *rescale_p, z); }, m);
    } else {
        tab = grid_table(g, "R", [&](cplx z) { return target_R(t, z); }, m);
    }
    emit(std::move(tab), m, c.out, c.format);
}

void cmd_cross_section(const CLI::App* sub, Params p, const Common& c, const std::string& N_s, const std::string& xi_s) {
    std::vector<int> Ns = parse_int_list(N_s);
    Range xr = parse_range(xi_s);
    p.N = *std::max_element(Ns.begin(), Ns.end());
    Target t = resolve(p);
    if (!t.ensemble) throw DomainError("cross-section needs an ensemble family");
    std::vector<double> xs;
    for (int i = 0; i < xr.n; ++i) xs.push_back(xr.at(i));
    auto tables = convergence_table(t.spec, xs, Ns);
    for (const auto& ct : tables) {
        Meta m = make_meta("cross-section", sub, c.seed);
        m.add("N", std::to_string(ct.N));
        m.add("sup_distance_interior", ct.sup_distance);
        m.add("interior_points", std::to_string(ct.interior_points));
        Table tab;
        tab.columns = {"xi", "cN_over_pi", "sigma_eq"};
        for (std::size_t i = 0; i < ct.xi_values.size(); ++i)
            tab.rows.push_back({ct.xi_values[i], ct.c_N_over_pi[i], ct.equilibrium[i]});
        std::string path = c.out == "-" ? "-" : with_suffix(c.out, "_N" + std::to_string(ct.N));
        emit(std::move(tab), m, path, c.format);
    }
}

void cmd_kernel(const CLI::App* sub, const Params& p, const Common& c, const std::string& grid_s, const std::string& z_s) {
    Target t = resolve(p);
    GridSpec g = parse_grid(grid_s);
    Meta m = make_meta("kernel", sub, c.seed);
    Table tab;
    if (!t.ensemble && line_kind(t.limit.kind)) {
        tab = grid_table(g, "K", [&](cplx w) { return line_K(t.limit, w.real(), w.imag()); }, m);
        emit(std::move(tab), m, c.out, c.format);
        return;
    }
    if (t.c_infinite) throw DomainError("kernel: c = inf has no planar kernel here");
    cplx z = parse_point(z_s);
    std::size_t n = static_cast<std::size_t>(g.x.n) * g.y.n;
    std::vector<double> k2(n), ber(n);
    std::function<std::pair<double, double>(cplx)> eval;
    if (t.ensemble) {
        eval = [&](cplx w) {
            KernelValue kv = kernel(t.spec, z, w);
            return std::make_pair(kv.absK2, kv.berezin_available ? kv.berezin : std::nan(""));
        };
    } else {
        LimitKernel lk = limit_kernel(t.limit);
        double rz = lk.R(z);
        eval = [lk, rz, z](cplx w) {
            double a = std::norm(lk.K(z, w));
            return std::make_pair(a, rz > 1e-300 ? a / rz : std::nan(""));
        };
    }
    parallel_for(n, [&](std::size_t idx) {
        cplx w(g.x.at(static_cast<int>(idx % g.x.n)), g.y.at(static_cast<int>(idx / g.x.n)));
        try {
            std::tie(k2[idx], ber[idx]) = eval(w);
        } catch (const DomainError&) {
            k2[idx] = ber[idx] = std::nan("");
        }
    });
    tab.columns = {"x", "y", "absK2", "berezin"};
    for (std::size_t idx = 0; idx < n; ++idx)
        tab.rows.push_back({g.x.at(static_cast<int>(idx % g.x.n)), g.y.at(static_cast<int>(idx / g.x.n)), k2[idx], ber[idx]});
    m.add("z", format_double(z.real()) + "," + format_double(z.imag()));
    emit(std::move(tab), m, c.out, c.format);
}

void cmd_sample(const CLI::App* sub, const Params& p, const Common& c, const std::string& method_s, const ChainConfig& chain,
                bool sidecar) {
    Target t = resolve(p);
    if (!t.ensemble) throw DomainError("sample needs an ensemble family");
    SampleMethod method = parse_sample_method(method_s);
    SampleCloud cloud = sample(t.spec, method, c.seed, chain);
    Meta m = make_meta("sample", sub, c.seed);
    if (!cloud.diagnostics.warning.empty()) std::cerr << "warning: " << cloud.diagnostics.warning << "\n";
    emit(cloud_table(cloud.points), m, c.out, c.format);
    if (!sidecar || c.out == "-") return;
    ojson j;
    j["meta"] = m.json();
    j["method"] = sample_method_name(cloud.method);
    j["N"] = cloud.points.size();
    ojson d;
    if (method == SampleMethod::mcmc) {
        d["acceptance_rate"] = cloud.diagnostics.acceptance_rate;
        d["proposal_scale"] = cloud.diagnostics.proposal_scale;
    } else {
        d["matrix_norm"] = cloud.diagnostics.matrix_norm;
        d["eig_residual"] = cloud.diagnostics.eig_residual;
    }
    d["warning"] = cloud.diagnostics.warning;
    j["diagnostics"] = d;
    try {
        j["ks_to_equilibrium"] = ks_to_equilibrium(t.spec, cloud.points);
    } catch (const DomainError&) {
        j["ks_to_equilibrium"] = nullptr;
    }
    write_atomic(with_suffix(c.out, "", ".json"), j.dump(1) + "\n");
}

struct WardArgs {
    std::string kernel;
    std::string variant = "auto";
    std::string grid = "-1:1:61,-1:1:61";
    WardOptions opt;
    bool no_mass_one = false;
};

void cmd_ward(const CLI::App* sub, Params p, const Common& c, WardArgs w) {
    p.family = w.kernel;
    Target t = resolve(p);
    if (t.ensemble) throw DomainError("ward-check needs a limiting kernel, not an ensemble family");
    if (t.c_infinite) throw DomainError("ward-check: c = inf is not supported");
    LimitKernel k = limit_kernel(t.limit);
    WardOptions opt = w.opt;
    if (w.variant == "auto") {
        opt.variant = t.limit.kind == LimitKind::hardedge_bulk   ? WardVariant::hard
                      : t.limit.kind == LimitKind::planar_bessel ? WardVariant::bessel
                                                                 : WardVariant::free;
    } else {
        opt.variant = parse_ward_variant(w.variant);
    }
    opt.a = t.limit.a;
    opt.nu = t.limit.nu;
    opt.mass_one = !w.no_mass_one;
    GridSpec g = parse_grid(w.grid);
    ComplexGrid cg{g.x.lo, g.x.hi, g.y.lo, g.y.hi, g.x.n, g.y.n, {}};
    WardReport rep = ward_residual(k, cg, opt);
    Meta m = make_meta("ward-check", sub, c.seed);
    m.add("kernel", rep.kernel);
    m.add("variant", ward_variant_name(rep.variant));
    m.add("residual_sup", rep.residual_sup);
    m.add("mass_one_max_dev", rep.mass_one_max_dev);
    m.add("skipped", std::to_string(rep.skipped));
    if (c.format == "json") {
        ojson j;
        j["meta"] = m.json();
        j["kernel"] = rep.kernel;
        j["variant"] = ward_variant_name(rep.variant);
        j["residual_sup"] = rep.residual_sup;
        j["mass_one_max_dev"] = rep.mass_one_max_dev;
        j["skipped"] = rep.skipped;
        j["grid"] = {{"x0", cg.x0}, {"x1", cg.x1}, {"nx", cg.nx}, {"y0", cg.y0}, {"y1", cg.y1}, {"ny", cg.ny}};
        j["residuals"] = rep.grid.values;  // row-major, null where skipped
        write_atomic(c.out, j.dump(1) + "\n");
        return;
    }
    Table tab;
    tab.columns = {"x", "y", "R", "residual", "mass_one"};
    for (const auto& P : rep.points) {
        double nan = std::nan("");
        tab.rows.push_back({P.z.real(), P.z.imag(), P.skipped ? nan : P.R, P.skipped ? nan : P.residual,
                            P.skipped || !opt.mass_one ? nan : P.mass_one});
    }
    emit(std::move(tab), m, c.out, c.format);
}

struct AsymArgs {
    std::string formula = "hermite_bulk";
    std::string z = "1,0.1";
    std::string ns = "100,200,400,800";
    double nu = 0.0;
    int m = 0;
    std::string bound = "none";
    double p = 1.0;
    double c = 1.0;
    double M = 2.0;
};

void cmd_asymptotics(const CLI::App* sub, const Common& c, const AsymArgs& a) {
    Meta m = make_meta("asymptotics-check", sub, c.seed);
    Table tab;
    if (a.bound != "none") {
        FitDominate fd;
        cplx z = parse_point(a.z);
        if (a.bound == "herman")
            fd = hermite_uniform_bound_check(a.p, a.M);
        else if (a.bound == "f1p")
            fd = hermite_edge_bound_check(a.p, a.c);
        else if (a.bound == "baal") {
            if (a.nu != std::floor(a.nu)) throw DomainError("baal bound needs an integer --nu");
            fd = baal_product_check(static_cast<int>(a.nu), a.p, a.c, z);
        } else
            throw DomainError("unknown --bound " + a.bound);
        m.add("fit_N", std::to_string(fd.fit_N));
        m.add("fitted_constant", fd.fitted_constant);
        m.add("margin", fd.margin);
        m.add("dominated", fd.dominated ? "true" : "false");
        tab.columns = {"N", "statistic"};
        for (std::size_t i = 0; i < fd.check_N.size(); ++i) tab.rows.push_back({double(fd.check_N[i]), fd.statistic[i]});
        emit(std::move(tab), m, c.out, c.format);
        return;
    }
    AsymptoticRequest req;
    req.formula = parse_asymptotic_formula(a.formula);
    req.z = parse_point(a.z);
    req.nu = a.nu;
    req.m = a.m;
    auto sweep = asymptotic_sweep(req, parse_int_list(a.ns));
    std::string warning;
    for (const auto& s : sweep)
        if (!s.warning.empty()) warning = s.warning;
    if (!warning.empty()) {
        m.add("warning", warning);
        std::cerr << "warning: " << warning << "\n";
    }
    m.add("non_increasing", non_increasing(sweep) ? "true" : "false");
    tab.columns = {"n", "exact_mag_log2", "asympt_mag_log2", "rel_error"};
    for (const auto& s : sweep) tab.rows.push_back({double(s.n), s.exact.log2_abs(), s.asymptotic.log2_abs(), s.rel_error});
    emit(std::move(tab), m, c.out, c.format);
}

// ---- figures ----

struct FigArgs {
    std::string name;
    std::string dir = "figures";
    std::string c;
    int N = 0;
    std::optional<double> nu;
    std::string grid;
};

class FigureWriter {
public:
    FigureWriter(const CLI::App* sub, const Common& c, const FigArgs& a) : sub_(sub), common_(c), args_(a) {}

    void run(const std::string& name) {
        if (name == "all") {
            for (const char* n : {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "droplets", "induced"}) run(n);
            return;
        }
        if (name == "fig1") return fig1();
        if (name == "fig2") return strip_family("fig2", "fks_R", [](double a, cplx z) { return fks_R(a, z); });
        if (name == "fig3") return fig3();
        if (name == "fig4") return fig4();
        if (name == "fig5") return fig5();
        if (name == "fig6") return fig6();
        if (name == "fig7") return fig7();
        if (name == "fig8") return strip_family("fig8", "hardedge_R", [](double a, cplx z) { return hardedge_R(a, z); });
        if (name == "droplets") return droplets();
        if (name == "induced") return induced();
        throw DomainError("unknown figure " + name + " (fig1..fig8, droplets, induced, all)");
    }

private:
    const CLI::App* sub_;
    const Common& common_;
    const FigArgs& args_;

    Meta meta(const std::string& fig) const {
        Meta m = make_meta("figures", sub_, common_.seed);
        m.add("figure", fig);
        return m;
    }
    int N_or(int def) const { return args_.N > 0 ? args_.N : def; }
    std::vector<double> c_or(std::vector<double> def) const {
        if (args_.c.empty()) return def;
        return {parse_double(args_.c)};
    }
    GridSpec grid_or(const std::string& def) const { return parse_grid(args_.grid.empty() ? def : args_.grid); }
    void write(const std::string& file, Table t, const Meta& m) const {
        emit(std::move(t), m, (fs::path(args_.dir) / (file + (common_.format == "json" ? ".json" : ".csv"))).string(),
             common_.format);
    }

    void fig1() {
        EnsembleSpec s;
        s.family = Family::ague;
        s.N = N_or(1000);
        s.c = c_or({1.0})[0];
        SampleCloud cl = matrix_sample_elliptic(s, common_.seed);
        Meta m = meta("fig1");
        m.add("N", std::to_string(s.N));
        m.add("c", s.c);
        m.add("method", "matrix");
        m.add("eig_residual", cl.diagnostics.eig_residual);
        write("fig1", cloud_table(cl.points), m);
    }

    // translation-invariant strip densities about p = 0, with a = pi c sigma_sc(0)
    template <class F>
    void strip_family(const std::string& fig, const std::string& col, F f) {
        GridSpec g = grid_or("-3:3:121,-3:3:121");
        double sigma0 = EquilibriumLaw::semicircle().density(0.0);
        for (double c : c_or({1.0, 1.5, 2.0})) {
            double a = kPi * c * sigma0;
            Meta m = meta(fig);
            m.add("c", c);
            m.add("a", a);
            write(fig + "_c" + tag(c), grid_table(g, col, [&](cplx z) { return f(a, z); }, m), m);
        }
    }

    void fig3() {
        EnsembleSpec s;
        s.family = Family::ague_modified;
        s.N = N_or(1000);
        s.c = c_or({1.0})[0];
        double pN = 2.0 / std::sqrt(1.0 + s.c * s.c / std::cbrt(double(s.N)));
        RescaleMap map = rescale_map(s, pN);
        SampleCloud cl = matrix_sample_elliptic(s, common_.seed);
        std::vector<cplx> z;
        for (cplx w : cl.points) z.push_back(map.forward(w));
        Meta m = meta("fig3");
        m.add("N", std::to_string(s.N));
        m.add("c", s.c);
        m.add("p_N", pN);
        m.add("scale", map.scale);
        write("fig3", cloud_table(z), m);
    }

    void fig4() {
        GridSpec g = grid_or("-4:4:161,-3:3:121");
        for (double c : c_or({0.0, 1.0, INFINITY})) {
            Meta m = meta("fig4");
            m.add("c", c);
            if (c == 0.0)
                write("fig4_c0", line_table(g.x, "R", [](double x) { return kPi * airy_K(x, x); }), m);
            else if (std::isinf(c))
                write("fig4_cinf", grid_table(g, "R", [](cplx z) { return erfc_R(z); }, m), m);
            else
                write("fig4_c" + tag(c), grid_table(g, "R", [c](cplx z) { return bender_R(c, z); }, m), m);
        }
    }

    void fig5() {
        EnsembleSpec s;
        s.family = Family::alue;
        s.N = N_or(1000);
        s.c = c_or({7.0})[0];
        s.nu = args_.nu.value_or(0.0);
        if (s.nu != std::floor(s.nu)) throw DomainError("fig5: the matrix model needs an integer nu");
        SampleCloud cl = matrix_sample_alue(s.N, s.c, static_cast<int>(s.nu), common_.seed);
        double scale = (s.N / s.c) * (s.N / s.c);
        Table t;
        t.columns = {"re", "im", "x", "y"};
        for (cplx w : cl.points) t.rows.push_back({w.real(), w.imag(), scale * w.real(), scale * w.imag()});
        Meta m = meta("fig5");
        m.add("N", std::to_string(s.N));
        m.add("c", s.c);
        m.add("nu", s.nu);
        m.add("edge_scale", scale);
        m.add("eig_residual", cl.diagnostics.eig_residual);
        write("fig5", std::move(t), m);
    }

    void fig6() {
        double nu = args_.nu.value_or(0.5);
        GridSpec g = grid_or("-2:6:161,-3:3:120");
        Range line{0.02, 10.0, 500};
        Meta m0 = meta("fig6");
        m0.add("nu", nu);
        m0.add("c", 0.0);
        write("fig6_c0", line_table(line, "R", [nu](double x) { return alue_edge_tilde_R0(nu, x); }), m0);
        for (double c : c_or({1.0})) {
            Meta m = meta("fig6");
            m.add("nu", nu);
            m.add("c", c);
            write("fig6_c" + tag(c), grid_table(g, "R", [&](cplx z) { return alue_edge_R(c, nu, z); }, m), m);
        }
        Meta mi = meta("fig6");
        mi.add("nu", nu);
        mi.add("c", INFINITY);
        write("fig6_cinf", grid_table(g, "R", [nu](cplx z) { return planar_bessel_R(nu, z); }, mi), mi);
    }

    void fig7() {
        int N = N_or(100);
        GridSpec g = grid_or("-2.5:2.5:101,-2.5:2.5:101");
        for (double zeta : {1.0 / std::sqrt(2.0), std::sqrt(2.0), 2.0}) {
            Meta m = meta("fig7");
            m.add("N", std::to_string(N));
            m.add("d", "2");
            m.add("zeta", zeta);
            write("fig7_zeta" + tag(zeta),
                  grid_table(g, "B", [&](cplx w) {
                      KernelValue kv = dginibre_kernel(N, 2, zeta, w);
                      return kv.berezin_available ? kv.berezin : std::nan("");
                  }, m),
                  m);
        }
    }

    // boundary of the d-droplet: d-th roots of the ALUE ellipse boundary
    void droplets() {
        EnsembleSpec base;
        base.family = Family::alue;
        base.N = N_or(100);
        base.c = c_or({1.0})[0];
        base.nu = args_.nu.value_or(0.0);
        EllipticDroplet e = droplet(base);
        const int nt = 721;
        for (int d : {1, 2, 3}) {
            Table t;
            t.columns = {"branch", "t", "re", "im"};
            for (int k = 0; k < d; ++k)
                for (int i = 0; i < nt; ++i) {
                    double th = 2.0 * kPi * i / (nt - 1);
                    cplx w(e.center + e.semi_axis_x * std::cos(th), e.semi_axis_y * std::sin(th));
                    cplx z = std::polar(std::pow(std::abs(w), 1.0 / d), (std::arg(w) + 2.0 * kPi * k) / d);
                    t.rows.push_back({double(k), th, z.real(), z.imag()});
                }
            Meta m = meta("droplets");
            m.add("N", std::to_string(base.N));
            m.add("c", base.c);
            m.add("d", std::to_string(d));
            write("droplets_d" + std::to_string(d), std::move(t), m);
        }
    }

    void induced() {
        double c = c_or({1.0})[0];
        GridSpec g = grid_or("-4:4:161,-3:3:121");
        Meta ml = meta("induced");
        ml.add("nu", 1.0);
        write("induced_sine", line_table(g.x, "K", [](double x) { return gen_sine_K(1, x, x); }), ml);
        Meta mb = meta("induced");
        mb.add("nu", 1.0);
        mb.add("c", c);
        write("induced_R1_c" + tag(c), grid_table(g, "R", [c](cplx z) { return induced_R1(c, z); }, mb), mb);
        Meta mm = meta("induced");
        mm.add("nu", 1.0);
        write("induced_ml", grid_table(g, "R", [](cplx z) { return ml_R(1.0, z); }, mm), mm);
    }
};

}  // namespace

// ---- parsing helpers ----

Range parse_range(const std::string& s) {
    auto f = split(s, ':');
    if (f.size() != 3) throw DomainError("range '" + s + "' is not lo:hi:n");
    Range r{parse_double(f[0]), parse_double(f[1]), parse_int(f[2])};
    if (r.n < 2) throw DomainError("range '" + s + "': count must be at least 2");
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.hi > r.lo))
        throw DomainError("range '" + s + "': need finite lo < hi");
    return r;
}

GridSpec parse_grid(const std::string& s) {
    auto f = split(s, ',');
    if (f.size() != 2) throw DomainError("grid '" + s + "' is not x0:x1:nx,y0:y1:ny");
    return {parse_range(f[0]), parse_range(f[1])};
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& f : split(s, ',')) out.push_back(parse_int(f));
    if (out.empty()) throw DomainError("empty list");
    return out;
}

cplx parse_point(const std::string& s) {
    auto f = split(s, ',');
    if (f.size() == 1) return {parse_double(f[0]), 0.0};
    if (f.size() == 2) return {parse_double(f[0]), parse_double(f[1])};
    throw DomainError("point '" + s + "' is not re,im");
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> rest, files;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) throw DomainError("--config needs a file");
            files.push_back(args[++i]);
        } else if (a.rfind("--config=", 0) == 0) {
            files.push_back(a.substr(9));
        } else {
            rest.push_back(a);
        }
    }
    std::vector<std::string> cfg;
    for (const auto& file : files) {
        std::istringstream in(read_file(file));
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            auto eq = line.find('=');
            std::string key = trim(line.substr(0, eq));
            if (key.rfind("--", 0) == 0) key = key.substr(2);
            if (key.empty()) throw DomainError(file + ":" + std::to_string(lineno) + ": missing key");
            cfg.push_back(eq == std::string::npos ? "--" + key : "--" + key + "=" + trim(line.substr(eq + 1)));
        }
    }
    // after the program name and the subcommand
    std::size_t at = std::min<std::size_t>(rest.size(), 1);
    for (std::size_t i = 1; i < rest.size(); ++i)
        if (rest[i].empty() || rest[i][0] != '-') {
            at = i + 1;
            break;
        }
    rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(at), cfg.begin(), cfg.end());
    return rest;
}

int run(const std::vector<std::string>& raw) {
    CLI::App app{"Almost-Hermitian random matrix ensembles: densities, kernels, samples and checks", "bandgas"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    Params p;
    Common c_density, c_cross, c_kernel, c_sample, c_ward, c_asym, c_fig;
    std::string grid = "-3:3:121,-3:3:121", N_list = "50,100,200", xi = "-1.9:1.9:77", z = "0,0", method = "mcmc";
    std::optional<double> rescale_p;
    ChainConfig chain;
    bool no_sidecar = false;
    WardArgs ward;
    AsymArgs asym;
    FigArgs fig;

    auto* density = app.add_subcommand("density", "1-point function on a grid");
    add_params(density, p);
    add_common(density, c_density, "density.csv");
    density->add_option("--grid", grid, "x0:x1:nx,y0:y1:ny");
    density->add_option("--p", rescale_p, "rescale an ensemble about this real point");

    auto* cross = app.add_subcommand("cross-section", "vertical cross-sections against the equilibrium density");
    add_params(cross, p, false);
    add_common(cross, c_cross, "cross_section.csv");
    cross->add_option("--N", N_list, "comma-separated matrix sizes");
    cross->add_option("--xi", xi, "lo:hi:n");

    auto* kern = app.add_subcommand("kernel", "|K(z,w)|^2 and the Berezin kernel over a grid of w");
    add_params(kern, p);
    add_common(kern, c_kernel, "kernel.csv");
    kern->add_option("--grid", grid, "x0:x1:nx,y0:y1:ny");
    kern->add_option("--z", z, "base point re,im");

    auto* samp = app.add_subcommand("sample", "eigenvalue sample");
    add_params(samp, p);
    add_common(samp, c_sample, "sample.csv");
    samp->add_option("--method", method)->check(CLI::IsMember({"mcmc", "matrix"}));
    samp->add_option("--sweeps", chain.sweeps);
    samp->add_option("--burn-in", chain.burn_in);
    samp->add_option("--proposal-scale", chain.proposal_scale, "<= 0 for the default");
    samp->add_flag("--no-sidecar", no_sidecar, "skip the JSON diagnostics file");

    auto* wardc = app.add_subcommand("ward-check", "Ward residuals of a limiting kernel");
    {
        Params* pp = &p;
        wardc->add_option("--kernel", ward.kernel, "limiting kernel")->required();
        wardc->add_option("--a", pp->a);
        wardc->add_option("--c", pp->c);
        wardc->add_option("--nu", pp->nu);
        wardc->add_option("--d", pp->d);
    }
    add_common(wardc, c_ward, "ward.json");
    c_ward.format = "json";
    wardc->get_option("--format")->default_str("json");
    wardc->add_option("--variant", ward.variant)->check(CLI::IsMember({"auto", "free", "hard", "bessel"}));
    wardc->add_option("--grid", ward.grid);
    wardc->add_option("--radius", ward.opt.radius);
    wardc->add_option("--angular", ward.opt.angular);
    wardc->add_option("--radial", ward.opt.radial_per_8, "radial nodes per radius 8");
    wardc->add_option("--h-dbar", ward.opt.h_dbar);
    wardc->add_option("--h-lap", ward.opt.h_lap);
    wardc->add_option("--mass-extent", ward.opt.mass_extent);
    wardc->add_flag("--no-mass-one", ward.no_mass_one);

    auto* asy = app.add_subcommand("asymptotics-check", "orthogonal polynomial asymptotics against exact values");
    add_common(asy, c_asym, "asymptotics.csv");
    asy->add_option("--formula", asym.formula);
    asy->add_option("--z", asym.z, "re,im");
    asy->add_option("--n", asym.ns, "comma-separated degrees");
    asy->add_option("--nu", asym.nu);
    asy->add_option("--m", asym.m, "index shift for laguerre_pr");
    asy->add_option("--bound", asym.bound, "none, herman, f1p or baal")
        ->check(CLI::IsMember({"none", "herman", "f1p", "baal"}));
    asy->add_option("--p", asym.p);
    asy->add_option("--c", asym.c);
    asy->add_option("--M", asym.M, "radius for the herman bound");

    auto* figs = app.add_subcommand("figures", "data behind the figures");
    add_common(figs, c_fig, "");
    figs->add_option("name", fig.name, "fig1..fig8, droplets, induced, all")->required();
    figs->add_option("--out-dir", fig.dir);
    figs->add_option("--c", fig.c);
    figs->add_option("--N", fig.N, "0 for the figure default");
    figs->add_option("--nu", fig.nu);
    figs->add_option("--grid", fig.grid);

    try {
        std::vector<std::string> args = expand_config(raw);
        std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(rev);

        if (*density) cmd_density(density, p, c_density, grid, rescale_p);
        else if (*cross) cmd_cross_section(cross, p, c_cross, N_list, xi);
        else if (*kern) cmd_kernel(kern, p, c_kernel, grid, z);
        else if (*samp) cmd_sample(samp, p, c_sample, method, chain, !no_sidecar);
        else if (*wardc) {
            if (wardc->get_option("--out")->count() == 0 && c_ward.format == "csv") c_ward.out = "ward.csv";
            cmd_ward(wardc, p, c_ward, ward);
        } else if (*asy) cmd_asymptotics(asy, c_asym, asym);
        else if (*figs) FigureWriter(figs, c_fig, fig).run(fig.name);
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc)); }

}  // namespace bandgas::cli
