#include "multiboson/coherent.hpp"
#include "multiboson/errors.hpp"
#include "multiboson/evolution.hpp"
#include "multiboson/onemode.hpp"
#include "multiboson/orthopoly.hpp"
#include "multiboson/rep.hpp"
#include "multiboson/twomode.hpp"
#include "multiboson/validate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::json;
using namespace multiboson;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- output

std::string format_number(double x)
{
    if (!std::isfinite(x))
        return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void dump(const json& j, std::ostream& os, int indent = 0)
{
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            os << (first ? "" : ",\n") << pad << json(it.key()).dump() << ": ";
            dump(it.value(), os, indent + 2);
            first = false;
        }
        os << "\n" << close << "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        const bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
        if (flat) {
            os << "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                os << (i ? ", " : "");
                dump(j[i], os, indent);
            }
            os << "]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            os << (i ? ",\n" : "") << pad;
            dump(j[i], os, indent + 2);
        }
        os << "\n" << close << "]";
        return;
    }
    case json::value_t::number_float:
        os << format_number(j.get<double>());
        return;
    default:
        os << j.dump();
    }
}

std::string csv_cell(const json& v)
{
    if (v.is_number_float())
        return format_number(v.get<double>());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos)
            return s;
        std::string q = "\"";
        for (char c : s)
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    if (v.is_null())
        return "";
    return v.dump();
}

/// Records for CSV, one per atom, time point or measurement.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<json>> rows;

    json as_json() const
    {
        json out = json::array();
        for (const auto& r : rows) {
            json o = json::object();
            for (std::size_t i = 0; i < header.size(); ++i)
                o[header[i]] = r[i];
            out.push_back(o);
        }
        return out;
    }
};

struct Outcome {
    json results = json::object();
    Table table;
    json diagnostics = json::object();
    int exit_code = kOk;
};

std::string render(const json& config, const Outcome& out, const std::string& format)
{
    std::ostringstream os;
    if (format == "csv") {
        std::ostringstream cfg;
        cfg << config.dump();
        os << "# config: " << cfg.str() << "\n";
        os << "# version: " << MULTIBOSON_VERSION << "\n";
        if (!out.diagnostics.empty())
            os << "# diagnostics: " << out.diagnostics.dump() << "\n";
        for (std::size_t i = 0; i < out.table.header.size(); ++i)
            os << (i ? "," : "") << out.table.header[i];
        os << "\n";
        for (const auto& r : out.table.rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                os << (i ? "," : "") << csv_cell(r[i]);
            os << "\n";
        }
        return os.str();
    }
    json doc = json::object();
    doc["config"] = config;
    doc["results"] = out.results;
    doc["diagnostics"] = out.diagnostics;
    doc["version"] = MULTIBOSON_VERSION;
    dump(doc, os);
    os << "\n";
    return os.str();
}

// ---------------------------------------------------------------- config

json defaults_for(const std::string& command)
{
    if (command == "validate")
        return {{"hd_convention", "operator"}, {"seed", 20240611}, {"hc_N", 4000},
                {"checks", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}}};
    if (command == "spectrum")
        return {{"model", "onemode"}, {"mu", 4.0}, {"nu", 1.0}, {"alpha0", 1.0}, {"beta0", 1.0}, {"K", 0},
                {"N", 0}, {"n_atoms", 5}, {"hd_convention", "operator"}};
    if (command == "evolve")
        return {{"model", "preset"}, {"preset", "HIV"}, {"N", 40}, {"omega0", 1.0}, {"omega1", 1.0},
                {"l0", 1}, {"l1", 1}, {"alpha_table0", {1.0}}, {"alpha_table1", {1.0}},
                {"g_element", {1.0, -1.0}}, {"h_element", {1.0, 1.0}}, {"scale", 1.0}, {"offset", 0.0}, {"mu", 1.0}, {"nu", 0.0},
                {"initial", "fock"}, {"n0", 2}, {"n1", 3}, {"r0", 0}, {"r1", 0},
                {"zeta0", {0.0, 0.0}}, {"zeta1", {0.0, 0.0}},
                {"t_start", 0.0}, {"t_end", 0.02}, {"t_steps", 5},
                {"tail_policy", "enforce"}, {"tail_tol", 1e-8}, {"include_free", true}};
    if (command == "coherent")
        return {{"alpha0", 1.0}, {"zeta", {1.0, 0.0}}, {"N", 0}};
    throw UsageError("unknown command " + command);
}

bool same_kind(const json& want, const json& got)
{
    if (want.is_number())
        return got.is_number() && (!want.is_number_integer() || got.is_number_integer());
    if (want.is_array()) {
        if (!got.is_array())
            return false;
        return std::all_of(got.begin(), got.end(), [](const json& x) { return x.is_number(); });
    }
    return want.type() == got.type();
}

void assign(json& config, const std::string& key, const json& value, const std::string& origin)
{
    if (!config.contains(key))
        throw UsageError(origin + ": unknown key '" + key + "'");
    if (!same_kind(config[key], value))
        throw UsageError(origin + ": key '" + key + "' expects " + std::string(config[key].type_name()) + ", got " +
                         value.dump());
    config[key] = value;
}

json parse_flag_value(const std::string& text)
{
    json v = json::parse(text, nullptr, false);
    if (v.is_discarded() || v.is_object())
        return json(text);
    return v;
}

template <class T>
T get(const json& c, const char* key)
{
    return c.at(key).get<T>();
}

std::complex<double> get_complex(const json& c, const char* key)
{
    const auto v = c.at(key).get<std::vector<double>>();
    if (v.size() != 2)
        throw UsageError(std::string(key) + " must be [re, im]");
    return {v[0], v[1]};
}

bogoliubov::GroupElement get_element(const json& c, const char* key)
{
    const auto v = c.at(key).get<std::vector<double>>();
    if (v.size() != 2 || (v[1] != 1.0 && v[1] != -1.0))
        throw UsageError(std::string(key) + " must be [a, sigma] with sigma = +1 or -1");
    return {v[0], static_cast<int>(v[1])};
}

twomode::Convention get_convention(const json& c)
{
    const std::string s = get<std::string>(c, "hd_convention");
    if (s == "operator")
        return twomode::Convention::OperatorDerived;
    if (s == "printed")
        return twomode::Convention::Printed;
    throw UsageError("hd_convention must be 'operator' or 'printed'");
}

json family_json(const orthopoly::PolyFamily& f)
{
    using orthopoly::Tag;
    json j = {{"family", orthopoly::to_string(f.tag)}};
    switch (f.tag) {
    case Tag::Laguerre: j["alpha"] = f.alpha; break;
    case Tag::Meixner: j["beta"] = f.beta; j["c"] = f.c; break;
    case Tag::MeixnerPollaczek: j["lambda"] = f.lambda; j["phi"] = f.phi; break;
    case Tag::DualHahn: j["gamma"] = f.gamma; j["delta"] = f.delta; j["K"] = f.K; break;
    case Tag::ContinuousDualHahn: j["u"] = f.u; j["v"] = f.v; j["w"] = f.w; break;
    }
    return j;
}

std::string interval(double a, double b)
{
    const double lo = std::min(a, b), hi = std::max(a, b);
    auto side = [](double x) { return std::isinf(x) ? std::string(x < 0 ? "-inf" : "inf") : format_number(x); };
    return std::string(std::isinf(lo) ? "(" : "[") + side(lo) + ", " + side(hi) + (std::isinf(hi) ? ")" : "]");
}

// ---------------------------------------------------------------- commands

Outcome cmd_validate(const json& c)
{
    validate::ValidateOptions opt;
    opt.hd_convention = get_convention(c);
    opt.seed = get<unsigned>(c, "seed");
    opt.hc_N = get<int>(c, "hc_N");
    if (opt.hc_N < 4)
        throw UsageError("hc_N must be at least 4");
    Outcome out;
    out.table.header = {"id", "check", "status", "measurement", "value", "relation", "tolerance", "pass"};
    json checks = json::array();
    bool ok = true;
    for (int id : c.at("checks").get<std::vector<int>>()) {
        if (id < 1 || id > validate::check_count)
            throw UsageError("checks: ids run from 1 to " + std::to_string(validate::check_count));
        const validate::CheckResult r = validate::run_check(id, opt);
        ok = ok && r.status == validate::Status::Pass;
        json m = json::array();
        for (const validate::Measurement& x : r.measurements) {
            m.push_back({{"name", x.name}, {"value", x.value}, {"relation", validate::to_string(x.relation)},
                         {"tolerance", x.tolerance}, {"pass", x.pass}});
            out.table.rows.push_back({r.id, r.name, validate::to_string(r.status), x.name, x.value,
                                      validate::to_string(x.relation), x.tolerance, x.pass});
        }
        checks.push_back({{"id", r.id}, {"name", r.name}, {"status", validate::to_string(r.status)},
                          {"measurements", m}, {"detail", r.detail}});
        if (r.status != validate::Status::Pass)
            out.diagnostics["check " + std::to_string(r.id)] = r.detail.empty() ? "tolerance exceeded" : r.detail;
    }
    out.results = {{"checks", checks}, {"all_pass", ok}};
    out.exit_code = ok ? kOk : kFailure;
    return out;
}

json atom_records(const Table& t)
{
    json out = json::array();
    for (const auto& r : t.rows) {
        json o = json::object();
        for (std::size_t i = 1; i + 1 < t.header.size(); ++i)
            o[t.header[i]] = r[i];
        out.push_back(o);
    }
    return out;
}

void add_continuum_row(Outcome& out)
{
    const json& c = out.results["continuum"];
    if (!c.is_null())
        out.table.rows.push_back({"continuum", nullptr, nullptr, nullptr, nullptr, c});
}

Outcome spectrum_onemode(const json& c)
{
    const onemode::OneModeHamiltonian h(get<double>(c, "mu"), get<double>(c, "nu"), get<double>(c, "alpha0"));
    const onemode::CaseLabel label = onemode::classify(h.mu, h.nu, h.alpha0);
    const int n_atoms = get<int>(c, "n_atoms");
    const int N = get<int>(c, "N") > 0 ? get<int>(c, "N") : onemode::default_truncation(h);
    Outcome out;
    out.results["case"] = label.index;
    out.results["family"] = label.family ? family_json(*label.family) : json{{"family", "diagonal"}};
    out.results["truncation"] = N;
    const orthopoly::SpectralMeasure mu = onemode::spectrum(h, true, std::max(n_atoms, 1));
    out.results["continuum"] =
        mu.continuous ? json(interval(mu.physical(mu.continuous->lower), mu.physical(mu.continuous->upper))) : json(nullptr);

    out.table.header = {"kind", "n", "energy", "oracle", "oracle_delta", "support"};
    if (label.discrete) {
        const Eigen::VectorXd e = jacobi::eigenvalues(onemode::jacobi(h, N));
        const bool ascending = n_atoms < 2 || onemode::discrete_eigenvalue(h, 1) > onemode::discrete_eigenvalue(h, 0);
        for (int n = 0; n < std::min(n_atoms, N); ++n) {
            const double exact = onemode::discrete_eigenvalue(h, n);
            const double oracle = ascending ? e(n) : e(N - 1 - n);
            out.table.rows.push_back({"atom", n, exact, oracle, std::abs(oracle - exact), nullptr});
        }
    }
    out.results["atoms"] = atom_records(out.table);
    add_continuum_row(out);
    return out;
}

Outcome spectrum_hd(const json& c)
{
    const twomode::DBlock b{get<int>(c, "K"), get<double>(c, "alpha0"), get<double>(c, "beta0")};
    const twomode::Convention conv = get_convention(c);
    const std::vector<double> exact = twomode::hd_spectrum(b);
    const std::vector<double> oracle = jacobi::oracle_eigs(twomode::hd_block_jacobi(b, conv), b.K + 1);
    Outcome out;
    out.results["family"] = family_json(twomode::hd_family(b));
    out.results["continuum"] = nullptr;
    out.table.header = {"kind", "n", "energy", "oracle", "oracle_delta", "support"};
    for (int n = 0; n <= b.K; ++n) {
        const auto i = static_cast<std::size_t>(n);
        out.table.rows.push_back({"atom", n, exact[i], oracle[i], std::abs(oracle[i] - exact[i]), nullptr});
    }
    out.results["atoms"] = atom_records(out.table);
    return out;
}

json uvw_json(const twomode::UVWParams& p)
{
    return {{"u", p.u}, {"v", p.v}, {"w", p.w}, {"branch", p.branch}};
}

Outcome spectrum_hc(const json& c)
{
    const int N = get<int>(c, "N") > 0 ? get<int>(c, "N") : 4000;
    const twomode::CBlock b{get<int>(c, "K"), get<double>(c, "alpha0"), get<double>(c, "beta0"), N};
    Outcome out;
    out.table.header = {"kind", "n", "energy", "oracle", "oracle_delta", "support"};
    out.results["truncation"] = N;
    const double edge = -twomode::hc_shift(b.alpha0, b.beta0);
    out.results["continuum"] = interval(-INFINITY, edge);
    try {
        out.results["family"] = uvw_json(twomode::uvw_params(b.K, b.alpha0, b.beta0));
    } catch (const twomode::BoundaryAmbiguity& e) {
        out.diagnostics["warning"] = e.what();
        out.results["family"] = {{"left", uvw_json(e.left())}, {"right", uvw_json(e.right())}};
        out.results["atoms"] = json::array();
        add_continuum_row(out);
        return out;
    }
    const orthopoly::SpectralMeasure mu = twomode::hc_spectrum(b);
    const Eigen::VectorXd e = jacobi::eigenvalues(twomode::hc_block_jacobi(b));
    std::vector<double> atoms;
    for (const orthopoly::Atom& a : mu.atoms)
        atoms.push_back(mu.physical(a.location));
    std::sort(atoms.rbegin(), atoms.rend());
    for (std::size_t n = 0; n < atoms.size() && static_cast<int>(n) < get<int>(c, "n_atoms"); ++n) {
        const double oracle = e(N - 1 - static_cast<Eigen::Index>(n));
        out.table.rows.push_back({"atom", static_cast<int>(n), atoms[n], oracle, std::abs(oracle - atoms[n]), nullptr});
    }
    out.results["atoms"] = atom_records(out.table);
    add_continuum_row(out);
    return out;
}

Outcome cmd_spectrum(const json& c)
{
    const std::string model = get<std::string>(c, "model");
    if (model == "onemode")
        return spectrum_onemode(c);
    if (model == "hd")
        return spectrum_hd(c);
    if (model == "hc")
        return spectrum_hc(c);
    throw UsageError("spectrum model must be onemode, hd or hc");
}

rep::MultibosonRep rep_from(const json& c, const char* l_key, const char* table_key)
{
    return rep::MultibosonRep(get<int>(c, l_key), c.at(table_key).get<std::vector<double>>());
}

Outcome cmd_evolve(const json& c)
{
    evolution::FullModel m;
    const std::string model = get<std::string>(c, "model");
    const int N = get<int>(c, "N");
    if (model == "preset") {
        m = evolution::preset_model(evolution::parse_preset(get<std::string>(c, "preset")), N, get<double>(c, "omega0"),
                                    get<double>(c, "omega1"));
    } else if (model == "twomode") {
        m.N = N;
        m.omega0 = get<double>(c, "omega0");
        m.omega1 = get<double>(c, "omega1");
        m.interaction = evolution::TwoModeInteraction{{rep_from(c, "l0", "alpha_table0"), rep_from(c, "l1", "alpha_table1")},
                                                      get_element(c, "g_element"), get_element(c, "h_element"), get<double>(c, "scale"),
                                                      get<double>(c, "offset")};
    } else if (model == "onemode") {
        m.N = N;
        m.omega0 = get<double>(c, "omega0");
        m.interaction = evolution::OneModeInteraction{rep_from(c, "l0", "alpha_table0"), get<double>(c, "mu"), get<double>(c, "nu")};
    } else {
        throw UsageError("evolve model must be preset, twomode or onemode");
    }
    const std::string policy = get<std::string>(c, "tail_policy");
    if (policy != "enforce" && policy != "report")
        throw UsageError("tail_policy must be enforce or report");
    m.tail_policy = policy == "report" ? evolution::TailPolicy::Report : evolution::TailPolicy::Enforce;
    m.tail_tol = get<double>(c, "tail_tol");

    const bool two = m.modes() == 2;
    StateVector psi0;
    const std::string initial = get<std::string>(c, "initial");
    if (initial == "fock") {
        psi0 = two ? evolution::fock_state(N, get<int>(c, "n0"), get<int>(c, "n1"))
                   : basis_state(N, get<int>(c, "n0"), "fock");
        if (!two && (get<int>(c, "n0") < 0 || get<int>(c, "n0") >= N))
            throw DomainError("n0 outside the truncation");
    } else if (initial == "coherent") {
        auto profile = [&](const char* l, const char* t, const char* r, const char* z) {
            return evolution::coherent_profile(rep_from(c, l, t), get<int>(c, r), get_complex(c, z), N);
        };
        if (two)
            psi0 = evolution::product_state(profile("l0", "alpha_table0", "r0", "zeta0"),
                                            profile("l1", "alpha_table1", "r1", "zeta1"));
        else
            psi0 = {profile("l0", "alpha_table0", "r0", "zeta0"), "fock"};
    } else {
        throw UsageError("initial must be fock or coherent");
    }

    const int steps = get<int>(c, "t_steps");
    if (steps < 1)
        throw UsageError("t_steps must be positive");
    const double t0 = get<double>(c, "t_start"), t1 = get<double>(c, "t_end");
    std::vector<double> times;
    for (int i = 0; i < steps; ++i)
        times.push_back(steps == 1 ? t0 : t0 + (t1 - t0) * i / (steps - 1));

    Outcome out;
    const bool free = c.at("include_free").get<bool>();
    evolution::ObservableSeries series;
    for (double t : times) {
        const StateVector psi = evolution::evolve_full(m, psi0, t, free);
        evolution::SeriesRecord r;
        r.t = t;
        r.obs = evolution::observables(psi, m.modes());
        r.norm = psi.norm();
        r.tail = evolution::fock_tail(m, psi.amplitudes);
        series.records.push_back(r);
        series.max_tail = std::max(series.max_tail, r.tail);
    }
    out.table.header = two ? std::vector<std::string>{"t", "mean_n0", "var_n0", "fano_n0", "mean_n1", "var_n1", "fano_n1",
                                                      "norm_error", "tail"}
                           : std::vector<std::string>{"t", "mean_n0", "var_n0", "fano_n0", "norm_error", "tail"};
    for (const evolution::SeriesRecord& r : series.records) {
        std::vector<json> row{r.t, r.obs.mean0, r.obs.var0, r.obs.fano0};
        if (two)
            row.insert(row.end(), {r.obs.mean1, r.obs.var1, r.obs.fano1});
        row.insert(row.end(), {std::abs(r.norm - 1.0), r.tail});
        out.table.rows.push_back(std::move(row));
    }
    out.results["series"] = out.table.as_json();
    out.results["max_tail"] = series.max_tail;
    return out;
}

Outcome cmd_coherent(const json& c)
{
    const double alpha = get<double>(c, "alpha0");
    const std::complex<double> zeta = get_complex(c, "zeta");
    const int N = get<int>(c, "N") > 0 ? get<int>(c, "N") : coherent::min_truncation(std::abs(zeta), alpha) + 2;
    const StateVector raw = coherent::coherent_amplitudes(zeta, alpha, N);
    const double norm2 = raw.amplitudes.squaredNorm();
    const Eigen::VectorXcd v = raw.amplitudes / std::sqrt(norm2);
    const rep::Generators g = rep::sector_generators(rep::OneModeSector(rep::MultibosonRep(1, {alpha}), 0, N));
    const double residual = (g.Am.cast<std::complex<double>>() * v - zeta * v).head(N - 1).norm();
    const evolution::Observables obs = evolution::observables({v, "fock"}, 1);
    Outcome out;
    out.results = {{"truncation", N},
                   {"norm_squared", norm2},
                   {"kernel", coherent::kernel(std::norm(zeta), alpha).real()},
                   {"lowering_residual", residual},
                   {"mean_n", obs.mean0},
                   {"var_n", obs.var0},
                   {"fano", obs.fano0}};
    out.table.header = {"k", "re", "im", "probability"};
    for (int k = 0; k < N; ++k)
        out.table.rows.push_back({k, v(k).real(), v(k).imag(), std::norm(v(k))});
    out.results["amplitudes"] = out.table.as_json();
    return out;
}

Outcome dispatch(const std::string& command, const json& config)
{
    if (command == "validate")
        return cmd_validate(config);
    if (command == "spectrum")
        return cmd_spectrum(config);
    if (command == "evolve")
        return cmd_evolve(config);
    return cmd_coherent(config);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multiboson sl(2) Hamiltonians: spectra, evolution and validation"};
    app.set_version_flag("--version", std::string(MULTIBOSON_VERSION));
    app.require_subcommand(1);

    struct Sub {
        CLI::App* app;
        std::map<std::string, std::string> flags;
    };
    std::map<std::string, Sub> subs;
    std::string config_path, out_path, format = "json";
    const std::vector<std::pair<std::string, std::string>> commands{
        {"validate", "Run the invariant suites"},
        {"spectrum", "Spectrum of a one-mode Hamiltonian or a two-mode block"},
        {"evolve", "Time evolution with observables"},
        {"coherent", "Coherent-state amplitudes and diagnostics"}};
    for (const auto& [name, help] : commands) {
        Sub& s = subs[name];
        s.app = app.add_subcommand(name, help);
        s.app->add_option("--config", config_path, "JSON file with config keys");
        s.app->add_option("--out", out_path, "Output path (stdout when omitted)");
        s.app->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        const json d = defaults_for(name);
        for (auto it = d.begin(); it != d.end(); ++it) {
            std::string flag = it.key();
            std::replace(flag.begin(), flag.end(), '_', '-');
            s.app->add_option("--" + flag, s.flags[it.key()], "default " + it.value().dump());
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    std::string command;
    for (auto& [name, s] : subs)
        if (s.app->parsed())
            command = name;
    Sub& sub = subs[command];

    json config;
    try {
        config = defaults_for(command);
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in)
                throw UsageError("cannot open config file " + config_path);
            const json file = json::parse(in, nullptr, false);
            if (file.is_discarded() || !file.is_object())
                throw UsageError(config_path + ": not a JSON object");
            for (auto it = file.begin(); it != file.end(); ++it)
                assign(config, it.key(), it.value(), config_path);
        }
        for (auto& [key, text] : sub.flags) {
            std::string flag = key;
            std::replace(flag.begin(), flag.end(), '_', '-');
            if (sub.app->count("--" + flag) > 0)
                assign(config, key, parse_flag_value(text), "--" + flag);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    Outcome outcome;
    try {
        outcome = dispatch(command, config);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const json::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const TruncationOverflow& e) {
        std::cerr << "truncation overflow: " << e.what() << " (tail norm " << format_number(e.tail_norm())
                  << "); raise N, shorten the time grid or use tail_policy=report\n";
        return kFailure;
    } catch (const DomainError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kFailure;
    }

    json resolved = config;
    resolved["command"] = command;
    const std::string text = render(resolved, outcome, format);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write " << out_path << "\n";
            return kFailure;
        }
        f << text;
    }
    return outcome.exit_code;
}
