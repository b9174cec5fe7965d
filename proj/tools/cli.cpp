#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "paving/constructions.hpp"
#include "paving/errors.hpp"
#include "paving/frame.hpp"
#include "paving/io.hpp"
#include "paving/paving.hpp"

namespace paving::cli {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

// Writes to path, or to out when path is empty or "-".
void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
    } else {
        write_file(path, content);
    }
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void require_family_args(std::size_t r, std::size_t n) {
    if (r < 2) throw InvalidArgument("--r must be at least 2");
    if (n < 1) throw InvalidArgument("--n must be at least 1");
}

FrameFamily build_family(std::size_t r, std::size_t n) {
    require_family_args(r, n);
    return r == 2 ? build_nonpavable_r2(n) : build_nonpavable_general(r, n);
}

// Uniform in [-1, 1) from the top 53 bits; platform independent.
double unit_uniform(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-52 - 1.0;
}

double max_abs(const std::vector<double>& v, double target) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x - target));
    return m;
}

// ---------------------------------------------------------------------------

struct BuildArgs {
    std::size_t r = 2;
    std::size_t n = 0;
    std::string out;
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
    const FrameFamily f = build_family(a.r, a.n);
    const DeltaSchedule schedule = delta_schedule(a.r, a.n);
    const std::string prefix =
        a.out.empty() ? "family_r" + std::to_string(a.r) + "_n" + std::to_string(a.n) : a.out;
    write_file(prefix + ".csv", io::matrix_csv(f.vectors()));
    write_file(prefix + ".json", io::family_sidecar_json(schedule, block_layout(schedule)));
    out << "wrote " << prefix << ".csv (" << f.size() << "x" << f.dimension() << ") and "
        << prefix << ".json\n";
    return kPass;
}

struct VerifyArgs {
    std::string matrix;
    std::optional<std::size_t> r;
    std::optional<std::size_t> n;
    Tolerances tol;
    std::string report;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    ComplexMatrix m;
    std::string source;
    std::optional<double> expected;
    if (!a.matrix.empty()) {
        m = io::read_matrix_csv_file(a.matrix);
        source = a.matrix;
        if (a.r) expected = static_cast<double>(*a.r);
    } else {
        if (!a.r || !a.n) throw InvalidArgument("verify needs --matrix or both --r and --n");
        m = build_family(*a.r, *a.n).vectors();
        source = "build(r=" + std::to_string(*a.r) + ", n=" + std::to_string(*a.n) + ")";
        expected = static_cast<double>(*a.r);
    }
    const VerificationReport report = verify_matrix(m, expected, a.tol, source);
    emit(a.report, report.to_json(), out);
    if (!report.pass()) {
        err << "verification failed:";
        for (const auto& name : report.failed()) err << ' ' << name;
        err << '\n';
        return kCheckFailed;
    }
    return kPass;
}

struct CertifyArgs {
    std::size_t r = 2;
    std::size_t n = 0;
    std::string mode = "exhaustive";
    std::uint64_t count = 1000;
    std::uint64_t seed = 1;
    std::uint64_t budget = kDefaultPartitionBudget;
    unsigned threads = 0;
    std::string out;
};

int cmd_certify(const CertifyArgs& a, std::ostream& out, std::ostream& err) {
    const FrameFamily f = build_family(a.r, a.n);
    const CertifyMode mode =
        a.mode == "exhaustive" ? CertifyMode::exhaustive() : CertifyMode::sampled(a.count, a.seed);
    try {
        const auto summary = certify_nonpavable(f, a.r, a.n, mode, {a.budget, a.threads});
        emit(a.out, io::certificate_json(summary), out);
        if (summary.vacuous) err << "note: n = 1 makes every witness bound vacuous (delta_k = 1)\n";
    } catch (const CertificationFailure& e) {
        err << "certification failed: " << e.what() << "\npartition:";
        for (auto l : e.labels()) err << ' ' << l;
        err << '\n';
        return kCheckFailed;
    }
    return kPass;
}

struct DoubleArgs {
    std::size_t r = 2;
    std::size_t n = 0;
    std::size_t k = 0;
    std::uint64_t budget = kDefaultEntryBudget;
    std::uint64_t seed = 1;
    std::size_t samples = 100;
    std::string out;
};

int cmd_double(const DoubleArgs& a, std::ostream& out, std::ostream& err) {
    const FrameFamily seed = build_family(a.r, a.n);
    const FrameFamily doubled = doubled_family(seed, a.k, a.budget);
    const std::size_t m = seed.size();
    const std::size_t copies = std::size_t{1} << a.k;

    const double seed_max = max_abs_entry(seed.vectors());
    const double max_entry = max_abs_entry(doubled.vectors());
    const double entry_bound = std::pow(2.0, -0.5 * static_cast<double>(a.k)) * seed_max;

    const HermitianMatrix g_seed = gram(seed.vectors());
    const HermitianMatrix g_doubled = gram(doubled.vectors());
    double offblock = 0.0;
    for (std::size_t i = 0; i < g_doubled.dim(); ++i) {
        for (std::size_t j = 0; j < g_doubled.dim(); ++j) {
            const Complex expected = i / m == j / m ? g_seed(i % m, j % m) : Complex{};
            offblock = std::max(offblock, std::abs(g_doubled(i, j) - expected));
        }
    }

    std::mt19937_64 engine(a.seed);
    double restriction = 0.0;
    for (std::size_t s = 0; s < a.samples; ++s) {
        std::vector<Complex> coeffs(m);
        for (auto& c : coeffs) c = {unit_uniform(engine), unit_uniform(engine)};
        std::vector<Complex> lhs(doubled.dimension());
        std::vector<Complex> rhs(seed.dimension());
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t c = 0; c < lhs.size(); ++c) lhs[c] += coeffs[i] * doubled.vectors()(i, c);
            for (std::size_t c = 0; c < rhs.size(); ++c) rhs[c] += coeffs[i] * seed.vectors()(i, c);
        }
        restriction = std::max(restriction, std::abs(squared_norm(lhs) - squared_norm(rhs)));
    }

    const FrameBounds seed_bounds = frame_bounds(seed);
    const FrameBounds bounds = frame_bounds(doubled);
    const bool pass = max_entry <= entry_bound + 1e-12 && offblock <= 1e-12 &&
                      restriction <= 1e-10 &&
                      std::abs(bounds.lower - seed_bounds.lower) <= 1e-8 &&
                      std::abs(bounds.upper - seed_bounds.upper) <= 1e-8;

    nlohmann::ordered_json report;
    report["r"] = a.r;
    report["n"] = a.n;
    report["K"] = a.k;
    report["rows"] = doubled.size();
    report["cols"] = doubled.dimension();
    report["gram_copies"] = copies;
    report["max_entry"] = max_entry;
    report["seed_max_entry"] = seed_max;
    report["entry_bound"] = entry_bound;
    report["gram_offblock_residual"] = offblock;
    report["restriction_identity_residual"] = restriction;
    report["restriction_samples"] = a.samples;
    report["seed"] = a.seed;
    report["frame_bounds"] = {bounds.lower, bounds.upper};
    report["pass"] = pass;

    const std::string prefix = a.out.empty() ? "doubled_r" + std::to_string(a.r) + "_n" +
                                                   std::to_string(a.n) + "_K" + std::to_string(a.k)
                                             : a.out;
    write_file(prefix + ".csv", io::matrix_csv(doubled.vectors()));
    write_file(prefix + ".report.json", report.dump(2) + "\n");
    out << "wrote " << prefix << ".csv (" << doubled.size() << "x" << doubled.dimension()
        << ") and " << prefix << ".report.json\n";
    if (!pass) {
        err << "doubling checks failed\n";
        return kCheckFailed;
    }
    return kPass;
}

struct SweepArgs {
    std::size_t r = 2;
    std::vector<std::size_t> ns;
    std::uint64_t budget = 65536;
    unsigned threads = 0;
    std::string out;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    if (a.r < 2) throw InvalidArgument("--r must be at least 2");
    std::ostringstream table;
    table << "n";
    for (std::size_t k = 1; k <= a.r; ++k) table << ",delta_" << k;
    table << ",best_riesz\n";
    for (std::size_t n : a.ns) {
        const DeltaSchedule s = delta_schedule(a.r, n);
        table << n;
        for (double d : s.deltas) table << ',' << fmt17(d);
        table << ',';
        const std::size_t rows = a.r * a.r * n;
        bool within = true;
        try {
            assignment_count(rows, a.r, a.budget);
        } catch (const ResourceLimit&) {
            within = false;
        }
        if (within) {
            const auto best = best_partition_riesz(build_family(a.r, n), a.r, {a.budget, a.threads});
            table << fmt17(best.value);
        }
        table << '\n';
    }
    emit(a.out, table.str(), out);
    return kPass;
}

}  // namespace

// ---------------------------------------------------------------------------

bool VerificationReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::vector<std::string> VerificationReport::failed() const {
    std::vector<std::string> names;
    for (const auto& c : checks)
        if (!c.pass) names.push_back(c.name);
    return names;
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["source"] = source;
    j["rows"] = rows;
    j["cols"] = cols;
    j["orthogonality_defect"] = orthogonality_defect;
    j["row_sums"] = row_sums;
    j["col_sums"] = col_sums;
    if (tight_constant) {
        j["tight_constant"] = *tight_constant;
    } else {
        j["tight_constant"] = nullptr;
    }
    j["expected_constant"] = expected_constant;
    j["projection_check"] = {{"idempotency_residual", idempotency_residual},
                             {"diag", diag_mean},
                             {"diag_max_deviation", diag_max_deviation},
                             {"trace", trace},
                             {"rank", rank}};
    auto cs = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        if (!c.detail.empty()) e["detail"] = c.detail;
        cs.push_back(std::move(e));
    }
    j["checks"] = std::move(cs);
    j["failed"] = failed();
    j["pass"] = pass();
    return j.dump(2) + "\n";
}

VerificationReport verify_matrix(const ComplexMatrix& m, std::optional<double> expected_constant,
                                 const Tolerances& tol, std::string source) {
    VerificationReport rep;
    rep.source = std::move(source);
    rep.rows = m.rows();
    rep.cols = m.cols();
    rep.orthogonality_defect = column_orthogonality_defect(m);
    rep.row_sums = row_square_sums(m);
    rep.col_sums = col_square_sums(m);

    double mean_col = 0.0;
    for (double c : rep.col_sums) mean_col += c;
    if (!rep.col_sums.empty()) mean_col /= static_cast<double>(rep.col_sums.size());
    rep.expected_constant = expected_constant.value_or(mean_col);

    const double row_dev = max_abs(rep.row_sums, 1.0);
    const double col_dev = max_abs(rep.col_sums, rep.expected_constant);
    rep.checks.push_back({"column_orthogonality", rep.orthogonality_defect <= tol.construct,
                          "defect " + fmt17(rep.orthogonality_defect)});
    rep.checks.push_back(
        {"row_square_sums", row_dev <= tol.construct, "max deviation from 1: " + fmt17(row_dev)});
    rep.checks.push_back({"col_square_sums", col_dev <= tol.construct,
                          "max deviation from " + fmt17(rep.expected_constant) + ": " +
                              fmt17(col_dev)});

    if (m.cols() == 0 || m.rows() == 0) {
        rep.checks.push_back({"tight_frame", false, "empty matrix"});
        return rep;
    }

    try {
        rep.tight_constant = is_tight_frame(m, tol.eig);
        const bool ok = rep.tight_constant.has_value() &&
                        std::abs(*rep.tight_constant - rep.expected_constant) <= tol.eig;
        rep.checks.push_back({"tight_frame", ok, ""});
    } catch (const InternalInconsistency& e) {
        rep.checks.push_back({"tight_frame", false, e.what()});
    }

    const double a = rep.tight_constant.value_or(rep.expected_constant);
    if (!(a > 0.0)) {
        rep.checks.push_back({"projection_idempotent", false, "nonpositive tight constant"});
        return rep;
    }
    const ComplexMatrix p = gram((1.0 / std::sqrt(a)) * m).matrix();
    rep.idempotency_residual = max_abs_diff(p * p, p);
    for (std::size_t i = 0; i < p.rows(); ++i) {
        rep.trace += p(i, i).real();
        rep.diag_max_deviation = std::max(rep.diag_max_deviation, std::abs(p(i, i).real() - 1.0 / a));
    }
    rep.diag_mean = rep.trace / static_cast<double>(p.rows());
    const double rounded = std::round(rep.trace);
    rep.rank = static_cast<std::size_t>(std::max(rounded, 0.0));
    rep.checks.push_back({"projection_idempotent", rep.idempotency_residual <= tol.eig,
                          "residual " + fmt17(rep.idempotency_residual)});
    rep.checks.push_back({"projection_diagonal", rep.diag_max_deviation <= tol.construct,
                          "max deviation from 1/A: " + fmt17(rep.diag_max_deviation)});
    rep.checks.push_back({"projection_rank",
                          std::abs(rep.trace - rounded) <= 1e-6 && rep.rank == m.cols(),
                          "trace " + fmt17(rep.trace)});
    return rep;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stacked-DFT non-pavable projection families: build, verify, certify"};
    app.require_subcommand(1);

    BuildArgs build;
    auto* b = app.add_subcommand("build", "Write a family as matrix CSV plus JSON sidecar");
    b->add_option("--r", build.r, "Number of blocks (>= 2)")->capture_default_str();
    b->add_option("--n", build.n, "Block parameter (>= 1)")->required();
    b->add_option("--out", build.out, "Output prefix (writes PREFIX.csv and PREFIX.json)");

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Check tight-frame and projection structure");
    v->add_option("--matrix", verify.matrix, "Matrix CSV to verify");
    v->add_option("--r", verify.r, "Expected tight constant / family r");
    v->add_option("--n", verify.n, "Family n (with --r, verifies a freshly built family)");
    v->add_option("--tol-construct", verify.tol.construct)->capture_default_str();
    v->add_option("--tol-eig", verify.tol.eig)->capture_default_str();
    v->add_option("--report", verify.report, "Report path (default stdout)");

    CertifyArgs certify;
    auto* c = app.add_subcommand("certify", "Certify the Riesz upper bound over partitions");
    c->add_option("--r", certify.r)->capture_default_str();
    c->add_option("--n", certify.n)->required();
    c->add_option("--mode", certify.mode)
        ->check(CLI::IsMember({"exhaustive", "sampled"}))
        ->capture_default_str();
    c->add_option("--count", certify.count, "Sampled partitions")->capture_default_str();
    c->add_option("--seed", certify.seed)->capture_default_str();
    c->add_option("--budget", certify.budget, "Maximum labeled assignments")->capture_default_str();
    c->add_option("--threads", certify.threads, "Workers (0 = hardware)")->capture_default_str();
    c->add_option("--out", certify.out, "Certificate path (default stdout)");

    DoubleArgs dbl;
    auto* d = app.add_subcommand("double", "Apply the doubling recursion K times");
    d->add_option("--r", dbl.r)->capture_default_str();
    d->add_option("--n", dbl.n)->required();
    d->add_option("--K", dbl.k, "Number of doublings")->capture_default_str();
    d->add_option("--budget", dbl.budget, "Maximum matrix entries")->capture_default_str();
    d->add_option("--seed", dbl.seed, "Seed for restriction-identity samples")->capture_default_str();
    d->add_option("--samples", dbl.samples)->capture_default_str();
    d->add_option("--out", dbl.out, "Output prefix (PREFIX.csv, PREFIX.report.json)");

    SweepArgs sweep;
    auto* s = app.add_subcommand("sweep", "Tabulate delta_k and best partition value over n");
    s->add_option("--r", sweep.r)->capture_default_str();
    s->add_option("--n", sweep.ns, "List of n values")->delimiter(',');
    s->add_option("--budget", sweep.budget, "Exhaustive search budget per n")->capture_default_str();
    s->add_option("--threads", sweep.threads)->capture_default_str();
    s->add_option("--out", sweep.out, "Table path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*b) return cmd_build(build, out);
        if (*v) return cmd_verify(verify, out, err);
        if (*c) return cmd_certify(certify, out, err);
        if (*d) return cmd_double(dbl, out, err);
        if (*s) return cmd_sweep(sweep, out);
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kIoOrParse;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoOrParse;
    } catch (const ResourceLimit& e) {
        err << "resource limit: " << e.what() << '\n';
        return kResource;
    } catch (const InternalInconsistency& e) {
        err << "internal inconsistency: " << e.what() << '\n';
        return kCheckFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
    return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace paving::cli
