#include "mkt/cli.hpp"

#include "mkt/errors.hpp"
#include "mkt/identities.hpp"
#include "mkt/kernel.hpp"
#include "mkt/numtheory.hpp"
#include "mkt/rational.hpp"
#include "mkt/spectral.hpp"
#include "mkt/witness.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <memory>
#include <ostream>
#include <sstream>
#include <utility>

namespace mkt::cli {

namespace {

// ---------------------------------------------------------------------------
// Minimal JSON document with insertion-ordered keys and fixed float formatting
// (17 significant digits), so identical invocations serialize byte-identically.
// ---------------------------------------------------------------------------
class Json {
  public:
    static Json object() { return Json(Kind::Object); }
    static Json array() { return Json(Kind::Array); }
    static Json str(std::string s) {
        Json j(Kind::String);
        j.str_ = std::move(s);
        return j;
    }
    static Json integer(long long v) {
        Json j(Kind::Int);
        j.int_ = v;
        return j;
    }
    static Json real(double v) {
        Json j(Kind::Float);
        j.float_ = v;
        return j;
    }
    static Json boolean(bool v) {
        Json j(Kind::Bool);
        j.bool_ = v;
        return j;
    }
    static Json rational(const Rational& q) {
        Json j = object();
        j.add("num", str(q.num().get_str()));
        j.add("den", str(q.den().get_str()));
        return j;
    }

    Json& add(const std::string& key, Json value) {
        members_.emplace_back(key, std::move(value));
        return *this;
    }
    Json& push(Json value) {
        items_.push_back(std::move(value));
        return *this;
    }

    void dump(std::ostream& os) const {
        switch (kind_) {
        case Kind::Object: {
            os << '{';
            bool first = true;
            for (const auto& [k, v] : members_) {
                if (!first) os << ',';
                first = false;
                dump_string(os, k);
                os << ':';
                v.dump(os);
            }
            os << '}';
            break;
        }
        case Kind::Array: {
            os << '[';
            bool first = true;
            for (const auto& v : items_) {
                if (!first) os << ',';
                first = false;
                v.dump(os);
            }
            os << ']';
            break;
        }
        case Kind::String:
            dump_string(os, str_);
            break;
        case Kind::Int:
            os << int_;
            break;
        case Kind::Float:
            os << format_double(float_);
            break;
        case Kind::Bool:
            os << (bool_ ? "true" : "false");
            break;
        }
    }

    static std::string format_double(double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

  private:
    enum class Kind { Object, Array, String, Int, Float, Bool };
    explicit Json(Kind k) : kind_(k) {}

    static void dump_string(std::ostream& os, const std::string& s) {
        os << '"';
        for (char c : s) {
            switch (c) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\t': os << "\\t"; break;
            case '\r': os << "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    os << buf;
                } else {
                    os << c;
                }
            }
        }
        os << '"';
    }

    Kind kind_;
    std::vector<std::pair<std::string, Json>> members_;
    std::vector<Json> items_;
    std::string str_;
    long long int_ = 0;
    double float_ = 0;
    bool bool_ = false;
};

struct CommandOutput {
    Json results = Json::object();
    bool failed = false;                 // any verification check in the payload failed
    std::vector<std::string> csv_lines;  // empty when the payload is not tabular
};

Rational parse_fraction(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text), Integer(1));
        return Rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse fraction '" + text + "'");
    }
}

std::pair<long long, long long> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos)
        throw std::invalid_argument("range must look like A..B, got '" + text + "'");
    try {
        long long lo = std::stoll(text.substr(0, dots));
        long long hi = std::stoll(text.substr(dots + 2));
        if (lo < 0 || hi < -1) throw std::invalid_argument("");
        return {lo, hi};
    } catch (const std::exception&) {
        throw std::invalid_argument("range must hold non-negative integers, got '" + text + "'");
    }
}

std::string csv_double(double v) { return Json::format_double(v); }

// ---------------------------------------------------------------------------
// Subcommand payloads
// ---------------------------------------------------------------------------

constexpr long long kSieveCap = 50'000'000; // ~9 bytes per entry

CommandOutput run_mobius(long long limit) {
    if (limit > kSieveCap) throw std::invalid_argument("mobius: limit capped at 5e7");
    MobiusTable t = sieve_mobius(limit);
    CommandOutput out;
    Json mu = Json::array();
    Json prefix = Json::array();
    out.csv_lines.push_back("k,mu,mertens");
    for (long long k = 1; k <= limit; ++k) {
        mu.push(Json::integer(t.mu(k)));
        prefix.push(Json::integer(t.prefix(k)));
        out.csv_lines.push_back(std::to_string(k) + "," + std::to_string(t.mu(k)) + "," +
                                std::to_string(t.prefix(k)));
    }
    out.results.add("limit", Json::integer(limit));
    out.results.add("mu", std::move(mu));
    out.results.add("mertens_prefix", std::move(prefix));
    return out;
}

CommandOutput run_mertens_at(double x) {
    long long limit = x < 1 ? 1 : static_cast<long long>(x);
    if (limit > kSieveCap) throw std::invalid_argument("mertens: x capped at 5e7");
    MobiusTable t = sieve_mobius(limit);
    CommandOutput out;
    out.results.add("x", Json::real(x));
    out.results.add("mertens", Json::integer(mertens(x, t)));
    return out;
}

CommandOutput run_mertens_upto(long long limit) {
    if (limit > kSieveCap) throw std::invalid_argument("mertens: limit capped at 5e7");
    MobiusTable t = sieve_mobius(limit);
    CommandOutput out;
    Json prefix = Json::array();
    out.csv_lines.push_back("k,mertens");
    for (long long k = 1; k <= limit; ++k) {
        prefix.push(Json::integer(t.prefix(k)));
        out.csv_lines.push_back(std::to_string(k) + "," + std::to_string(t.prefix(k)));
    }
    out.results.add("upto", Json::integer(limit));
    out.results.add("mertens_prefix", std::move(prefix));
    return out;
}

CommandOutput run_kernel(const std::string& xs, const std::string& ys, bool want_float) {
    Rational x = parse_fraction(xs);
    Rational y = parse_fraction(ys);
    Rational k = kernel_exact(x, y);
    CommandOutput out;
    out.results.add("x", Json::rational(x));
    out.results.add("y", Json::rational(y));
    out.results.add("exact", Json::rational(k));
    if (want_float) out.results.add("float", Json::real(kernel_float(x.to_double(), y.to_double())));
    return out;
}

CommandOutput run_identity(const std::string& which, const std::string& range) {
    auto [lo, hi] = parse_range(range);
    IdentityKind kind;
    long long sieve_to = 1;
    if (which == "eq12") {
        kind = IdentityKind::eq12;
        if (hi > 4096) throw std::invalid_argument("identity eq12: range end capped at 4096");
        if (hi >= lo) sieve_to = hi * hi;
    } else if (which == "mertens1897") {
        kind = IdentityKind::mertens1897;
        if (hi > kSieveCap) throw std::invalid_argument("identity mertens1897: range end capped at 5e7");
        if (hi >= lo) sieve_to = hi;
    } else {
        throw std::invalid_argument("identity: --check must be eq12 or mertens1897");
    }
    MobiusTable t = sieve_mobius(std::max(1LL, sieve_to));
    ScanResult scan = scan_identities(kind, lo, hi, t);

    CommandOutput out;
    out.failed = !scan.all_zero;
    Json reports = Json::array();
    out.csv_lines.push_back("parameter,lhs_num,lhs_den,rhs_num,rhs_den,residual_num,residual_den");
    for (const auto& r : scan.reports) {
        Json jr = Json::object();
        jr.add("parameter", Json::integer(r.parameter));
        jr.add("lhs", Json::rational(r.lhs));
        jr.add("rhs", Json::rational(r.rhs));
        jr.add("residual", Json::rational(r.residual));
        reports.push(std::move(jr));
        out.csv_lines.push_back(std::to_string(r.parameter) + "," + r.lhs.num().get_str() + "," +
                                r.lhs.den().get_str() + "," + r.rhs.num().get_str() + "," +
                                r.rhs.den().get_str() + "," + r.residual.num().get_str() + "," +
                                r.residual.den().get_str());
    }
    out.results.add("check", Json::str(which));
    out.results.add("reports", std::move(reports));
    out.results.add("all_zero", Json::boolean(scan.all_zero));
    return out;
}

CommandOutput run_l2(int grid) {
    Rational v = riemann_l2_sum(grid);
    CommandOutput out;
    out.results.add("grid", Json::integer(grid));
    out.results.add("value", Json::rational(v));
    out.results.add("value_float", Json::real(v.to_double()));
    out.results.add("below_quarter", Json::boolean(v < Rational(1, 4)));
    return out;
}

CommandOutput run_spectrum(int grid, double threshold) {
    Spectrum s = spectrum(grid, threshold);
    CommandOutput out;
    out.results.add("grid", Json::integer(grid));
    out.results.add("threshold", Json::real(threshold));
    Json eig = Json::array();
    for (double e : s.eigenvalues) eig.push(Json::real(e));
    out.results.add("eigenvalues", std::move(eig));
    out.results.add("positive_count", Json::integer(s.positive_count));
    out.results.add("negative_count", Json::integer(s.negative_count));
    Json est = Json::array();
    for (double e : s.kernel_eigenvalue_estimates) est.push(Json::real(e));
    out.results.add("kernel_eigenvalue_estimates", std::move(est));
    // no convergence theory backs these reciprocals for a discontinuous kernel
    out.results.add("estimate_quality", Json::str("indicative"));

    out.csv_lines.push_back("index,eigenvalue,kernel_estimate");
    size_t next_estimate = 0;
    for (size_t i = 0; i < s.eigenvalues.size(); ++i) {
        double e = s.eigenvalues[i];
        std::string est_field;
        if (std::abs(e) > threshold) est_field = csv_double(s.kernel_eigenvalue_estimates[next_estimate++]);
        out.csv_lines.push_back(std::to_string(i + 1) + "," + csv_double(e) + "," + est_field);
    }
    return out;
}

CommandOutput run_witness(int u, int extra, double q, bool q_given) {
    Lemma31Instance inst = q_given ? construct_lemma31(u, extra, q) : construct_lemma31(u, extra);
    Lemma31Verification v = verify_lemma31(inst);
    WitnessReport report = definiteness_check(inst);
    double box_err = overlap_box_max_rel_error(inst, report.overlap);

    CommandOutput out;
    Json ji = Json::object();
    ji.add("u", Json::integer(inst.u));
    ji.add("extra", Json::integer(inst.extra));
    ji.add("q", Json::real(inst.q_lower));
    Json primes = Json::array();
    for (const auto& p : inst.primes) primes.push(Json::str(p.get_str()));
    ji.add("primes", std::move(primes));
    Json ms = Json::array();
    for (const auto& m : inst.m) ms.push(Json::str(m.get_str()));
    ji.add("m", std::move(ms));
    ji.add("n", Json::str(inst.n.get_str()));
    ji.add("P", Json::str(inst.p_product.get_str()));
    out.results.add("instance", std::move(ji));

    Json jv = Json::object();
    jv.add("shape_ok", Json::boolean(v.shape_ok));
    jv.add("primes_admissible", Json::boolean(v.primes_admissible));
    jv.add("m_congruences", Json::boolean(v.m_congruences));
    jv.add("m_least", Json::boolean(v.m_least));
    jv.add("m_window", Json::boolean(v.m_window));
    jv.add("n_congruence", Json::boolean(v.n_congruence));
    jv.add("n_window", Json::boolean(v.n_window));
    jv.add("product_matches", Json::boolean(v.product_matches));
    jv.add("derived_congruence", Json::boolean(v.derived_congruence));
    jv.add("v_certificate", Json::boolean(v.v_certificate));
    jv.add("w_certificate", Json::boolean(v.w_certificate));
    jv.add("gcd_certificates", Json::boolean(v.gcd_certificates));
    jv.add("ok", Json::boolean(v.ok()));
    out.results.add("verification", std::move(jv));

    Json pts = Json::array();
    for (const auto& x : report.points) pts.push(Json::rational(x));
    out.results.add("points", std::move(pts));

    int size = static_cast<int>(inst.primes.size());
    Json gm = Json::array();
    for (int j = 0; j < size; ++j) {
        Json row = Json::array();
        for (int k = 0; k < size; ++k) row.push(Json::rational(report.kernel_matrix.at(j, k)));
        gm.push(std::move(row));
    }
    out.results.add("kernel_matrix", std::move(gm));

    Json jb = Json::object();
    jb.add("t", Json::real(report.bump.t));
    jb.add("Delta", Json::real(report.bump.Delta));
    jb.add("delta", Json::real(report.bump.delta));
    out.results.add("bump", std::move(jb));

    Json ov = Json::array();
    for (int j = 0; j < size; ++j) {
        Json row = Json::array();
        for (int k = 0; k < size; ++k) row.push(Json::real(report.overlap.at(j, k)));
        ov.push(std::move(row));
    }
    out.results.add("overlap", std::move(ov));
    out.results.add("overlap_box_rel_error", Json::real(box_err));
    out.results.add("max_eig_uG", Json::real(report.max_eig_uG));
    out.results.add("passes", Json::boolean(report.passes));

    out.failed = !(v.ok() && report.passes && box_err <= 1e-10);
    return out;
}

} // namespace

int exit_code_for_status(const std::string& status) {
    if (status == "ok") return 0;
    if (status == "fail") return 1;
    return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Mertens-kernel toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // lets --format appear after the subcommand as well
    std::string format = "json";
    app.add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    long long mobius_limit = 1;
    auto* cmd_mobius = app.add_subcommand("mobius", "sieve Mobius values and Mertens prefix sums");
    cmd_mobius->add_option("--limit", mobius_limit, "sieve limit")->required();

    double mertens_at = 0;
    long long mertens_upto = 0;
    auto* cmd_mertens = app.add_subcommand("mertens", "Mertens function values");
    auto* opt_at = cmd_mertens->add_option("--at", mertens_at, "evaluate M(x) at a real point");
    auto* opt_upto = cmd_mertens->add_option("--upto", mertens_upto, "list M(1..L)");
    opt_at->excludes(opt_upto);
    opt_upto->excludes(opt_at);

    std::string kernel_x, kernel_y;
    bool kernel_float_flag = false;
    auto* cmd_kernel = app.add_subcommand("kernel", "evaluate K(x, y) exactly");
    cmd_kernel->add_option("--x", kernel_x, "x as a fraction a/b")->required();
    cmd_kernel->add_option("--y", kernel_y, "y as a fraction c/d")->required();
    cmd_kernel->add_flag("--float", kernel_float_flag, "also evaluate in double precision");

    std::string identity_check, identity_range;
    auto* cmd_identity = app.add_subcommand("identity", "verify a Mertens identity over a range");
    cmd_identity->add_option("--check", identity_check, "eq12 or mertens1897")->required();
    cmd_identity->add_option("--range", identity_range, "parameter range A..B")->required();

    int l2_grid = 1;
    auto* cmd_l2 = app.add_subcommand("l2", "exact grid approximation of the squared-kernel integral");
    cmd_l2->add_option("--grid", l2_grid, "grid size N")->required();

    int spectrum_grid = 1;
    double spectrum_threshold = 1e-9;
    auto* cmd_spectrum = app.add_subcommand("spectrum", "eigenvalues of the discretized kernel operator");
    cmd_spectrum->add_option("--grid", spectrum_grid, "grid size N")->required();
    cmd_spectrum->add_option("--threshold", spectrum_threshold, "zero threshold for sign counts");

    int witness_u = 1, witness_extra = 0;
    double witness_q = 0;
    auto* cmd_witness = app.add_subcommand("witness", "construct and check a sign witness instance");
    cmd_witness->add_option("--u", witness_u, "+1 or -1")->check(CLI::IsMember({1, -1}));
    cmd_witness->add_option("--extra", witness_extra, "number of primes minus one")->required();
    auto* opt_q = cmd_witness->add_option("--q", witness_q, "prime lower bound (default 5 sqrt(extra+1))");

    std::vector<std::string> argv_copy = args;
    try {
        std::vector<const char*> argv;
        argv.push_back("mkt");
        for (const auto& a : argv_copy) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    std::string command;
    Json parameters = Json::object();
    auto started = std::chrono::steady_clock::now();
    CommandOutput payload;
    std::string status = "ok";
    try {
        if (cmd_mobius->parsed()) {
            command = "mobius";
            parameters.add("limit", Json::integer(mobius_limit));
            payload = run_mobius(mobius_limit);
        } else if (cmd_mertens->parsed()) {
            command = "mertens";
            if (opt_at->count() == 0 && opt_upto->count() == 0)
                throw std::invalid_argument("mertens: one of --at or --upto is required");
            if (opt_at->count() > 0) {
                parameters.add("at", Json::real(mertens_at));
                payload = run_mertens_at(mertens_at);
            } else {
                parameters.add("upto", Json::integer(mertens_upto));
                payload = run_mertens_upto(mertens_upto);
            }
        } else if (cmd_kernel->parsed()) {
            command = "kernel";
            parameters.add("x", Json::str(kernel_x));
            parameters.add("y", Json::str(kernel_y));
            parameters.add("float", Json::boolean(kernel_float_flag));
            payload = run_kernel(kernel_x, kernel_y, kernel_float_flag);
        } else if (cmd_identity->parsed()) {
            command = "identity";
            parameters.add("check", Json::str(identity_check));
            parameters.add("range", Json::str(identity_range));
            payload = run_identity(identity_check, identity_range);
        } else if (cmd_l2->parsed()) {
            command = "l2";
            parameters.add("grid", Json::integer(l2_grid));
            payload = run_l2(l2_grid);
        } else if (cmd_spectrum->parsed()) {
            command = "spectrum";
            parameters.add("grid", Json::integer(spectrum_grid));
            parameters.add("threshold", Json::real(spectrum_threshold));
            payload = run_spectrum(spectrum_grid, spectrum_threshold);
        } else if (cmd_witness->parsed()) {
            command = "witness";
            parameters.add("u", Json::integer(witness_u));
            parameters.add("extra", Json::integer(witness_extra));
            if (opt_q->count() > 0) parameters.add("q", Json::real(witness_q));
            payload = run_witness(witness_u, witness_extra, witness_q, opt_q->count() > 0);
        }
        status = payload.failed ? "fail" : "ok";
    } catch (const std::exception& e) {
        status = "error";
        payload.results = Json::object();
        payload.results.add("message", Json::str(e.what()));
        payload.csv_lines.clear();
        err << "error: " << e.what() << "\n";
    }
    auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);

    if (format == "csv" && status != "error") {
        if (payload.csv_lines.empty()) {
            err << "error: csv output is not available for this command\n";
            return 2;
        }
        for (const auto& line : payload.csv_lines) out << line << "\n";
        return exit_code_for_status(status);
    }

    Json envelope = Json::object();
    envelope.add("command", Json::str(command));
    envelope.add("parameters", std::move(parameters));
    envelope.add("results", std::move(payload.results));
    envelope.add("status", Json::str(status));
    envelope.add("elapsed_ms", Json::integer(elapsed.count()));
    envelope.dump(out);
    out << "\n";
    return exit_code_for_status(status);
}

} // namespace mkt::cli
