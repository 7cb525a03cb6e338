// Command-line driver: near-curve search, Hall search, the direct-scan
// oracle, and family verification, with sharding and checkpointing.

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>

#include "nearmiss/families.hpp"
#include "nearmiss/hall.hpp"
#include "nearmiss/nearcurve.hpp"
#include "nearmiss/records.hpp"

using namespace nearmiss;
using exactcore::Integer;
using exactcore::Rational;

namespace {

// Exact decimal / scientific parser: "0.05" -> 1/20, "1e12" -> 10^12.
Rational parse_rational(const std::string& s) {
    std::string mant = s;
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        mant = s.substr(0, epos);
        exp10 = std::stol(s.substr(epos + 1));
    }
    bool neg = !mant.empty() && mant[0] == '-';
    if (neg || (!mant.empty() && mant[0] == '+')) mant = mant.substr(1);
    auto dot = mant.find('.');
    std::string digits = mant;
    long frac = 0;
    if (dot != std::string::npos) {
        frac = (long)(mant.size() - dot - 1);
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
    }
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos)
        throw CLI::ValidationError("bad number: " + s);
    Rational r{Integer(digits), exactcore::ipow(10, frac)};
    r.canonicalize();
    long net = exp10;
    if (net > 0) r *= Rational(exactcore::ipow(10, net));
    if (net < 0) r /= Rational(exactcore::ipow(10, -net));
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

Integer parse_integer(const std::string& s) {
    Rational r = parse_rational(s);
    if (r.get_den() != 1)
        throw CLI::ValidationError("expected an integer: " + s);
    return r.get_num();
}

long parse_long(const std::string& s) {
    Integer v = parse_integer(s);
    if (!v.fits_slong_p())
        throw CLI::ValidationError("value out of range: " + s);
    return mpz_get_si(v.get_mpz_t());
}

struct GlobalOpts {
    std::string shard;
    std::string checkpoint;
    std::string format = "tsv";
    std::string out;
    int threads = 1;
    long precision_bits = 128;
    long stop_after_chunks = -1;  // test hook: simulate a kill
};

void add_global(CLI::App* cmd, GlobalOpts& g) {
    cmd->add_option("--shard", g.shard, "shard i/n of the chunk space");
    cmd->add_option("--checkpoint", g.checkpoint,
                    "append-only chunk checkpoint file");
    cmd->add_option("--format", g.format, "tsv or jsonl")
        ->check(CLI::IsMember({"tsv", "jsonl"}));
    cmd->add_option("--out", g.out, "output path (default stdout)");
    cmd->add_option("--threads", g.threads, "worker threads (default 1)");
    cmd->add_option("--precision-bits", g.precision_bits,
                    "mantissa bits for real evaluation");
    cmd->add_option("--stop-after-chunks", g.stop_after_chunks,
                    "stop after this many chunks (testing)")
        ->group("");
}

std::pair<int, int> parse_shard(const std::string& s) {
    if (s.empty()) return {1, 1};
    auto slash = s.find('/');
    if (slash == std::string::npos)
        throw CLI::ValidationError("--shard expects i/n");
    int i = std::stoi(s.substr(0, slash));
    int n = std::stoi(s.substr(slash + 1));
    if (n < 1 || i < 1 || i > n)
        throw CLI::ValidationError("--shard expects 1 <= i <= n");
    return {i, n};
}

int run_near(const std::string& curve_token, long height,
             const std::string& merit_min, const std::string& residual_max,
             std::optional<long> patch_count, long box_budget,
             long tail_height, const GlobalOpts& g) {
    auto curve = nearcurve::CurveSpec::parse(curve_token, g.precision_bits);
    nearcurve::SearchParams params;
    params.height = height;
    if (!merit_min.empty() && !residual_max.empty())
        throw CLI::ValidationError(
            "give exactly one of --merit-min / --residual-max");
    if (!merit_min.empty())
        params.threshold =
            nearcurve::Threshold::merit_min(parse_rational(merit_min));
    else if (!residual_max.empty())
        params.threshold =
            nearcurve::Threshold::residual_max(parse_rational(residual_max));
    else
        throw CLI::ValidationError(
            "one of --merit-min / --residual-max is required");
    params.prec.mantissa_bits = g.precision_bits;
    params.patch_count = patch_count;
    params.threads = g.threads;
    if (box_budget > 0) params.box_budget = box_budget;
    if (tail_height > 0) params.tail_height = tail_height;
    std::tie(params.shard_index, params.shard_count) = parse_shard(g.shard);

    records::Checkpoint ckpt(g.checkpoint);
    records::RecordWriter out(g.out, records::parse_format(g.format),
                              ckpt.enabled());

    long chunks = nearcurve::chunk_count(curve, params);
    auto emit = [&](const nearcurve::SearchResult& res) {
        for (const auto& h : res.hits)
            out.write(records::from_hit(curve.name(), h));
        for (const auto& s : res.segments)
            out.write(records::from_segment(curve.name(), s));
    };

    if (ckpt.enabled()) {
        // Stream chunk by chunk; order is the chunk order.
        long executed = 0;
        for (long c = 0; c < chunks; ++c) {
            std::string id = c == 0 ? "tail" : "w" + std::to_string(c - 1);
            if (ckpt.done(id)) continue;
            if (g.stop_after_chunks >= 0 && executed >= g.stop_after_chunks)
                return 0;
            emit(nearcurve::run_chunk(curve, params, c));
            out.flush();
            ckpt.mark(id);
            ++executed;
        }
        return 0;
    }
    emit(nearcurve::search(curve, params));
    return 0;
}

int run_hall(const Integer& xmax, const Integer& xmin,
             const std::string& raw_threshold, const std::string& ratio_min,
             double grid_factor, const Integer& direct_below, long box_budget,
             bool direct_only, const GlobalOpts& g) {
    hall::HallParams params;
    params.x_min = xmin;
    params.x_max = xmax;
    if (params.x_min < 1 || params.x_max < params.x_min)
        throw CLI::ValidationError("need 1 <= xmin <= xmax");
    if (params.x_max > Integer("100000000000000000"))
        throw CLI::ValidationError("xmax above 1e17 is not supported");
    params.raw_threshold = parse_rational(raw_threshold);
    params.ratio_min = parse_rational(ratio_min);
    params.grid_factor = grid_factor;
    params.threads = g.threads;
    params.prec.mantissa_bits = g.precision_bits;
    if (box_budget > 0) params.box_budget = box_budget;
    if (direct_below > 0) params.direct_below = direct_below;
    std::tie(params.shard_index, params.shard_count) = parse_shard(g.shard);

    records::Checkpoint ckpt(g.checkpoint);
    records::RecordWriter out(g.out, records::parse_format(g.format),
                              ckpt.enabled());
    auto emit = [&](const std::vector<hall::HallHit>& hits) {
        for (const auto& h : hits)
            if (h.reportable) out.write(records::from_hall(h));
    };

    if (direct_only) {
        auto hits = hall::direct_scan(params.x_min, params.x_max, params);
        std::sort(hits.begin(), hits.end(), hall::hall_order);
        emit(hits);
        return 0;
    }
    if (ckpt.enabled()) {
        long chunks = hall::chunk_count(params);
        long executed = 0;
        for (long c = 0; c < chunks; ++c) {
            std::string id = hall::chunk_id(params, c);
            if (ckpt.done(id)) continue;
            if (g.stop_after_chunks >= 0 && executed >= g.stop_after_chunks)
                return 0;
            emit(hall::run_chunk(params, c));
            out.flush();
            ckpt.mark(id);
            ++executed;
        }
        return 0;
    }
    emit(hall::hall_search(params));
    return 0;
}

int run_families(CLI::App* list_cmd, CLI::App* verify_cmd,
                 CLI::App* known_cmd, const std::string& id,
                 const std::string& t_range) {
    if (list_cmd->parsed()) {
        for (const auto& n : families::registry_names())
            std::printf("%s\n", n.c_str());
        return 0;
    }
    if (known_cmd->parsed()) {
        bool all_ok = true;
        for (const auto& c : families::verify_known_all()) {
            std::printf("%-18s %s  %s\n", c.name.c_str(),
                        c.ok ? "ok" : "FAIL", c.detail.c_str());
            all_ok = all_ok && c.ok;
        }
        return all_ok ? 0 : 1;
    }
    if (verify_cmd->parsed()) {
        auto dots = t_range.find("..");
        if (dots == std::string::npos)
            throw CLI::ValidationError("--t-range expects a..b");
        long a = parse_long(t_range.substr(0, dots));
        long b = parse_long(t_range.substr(dots + 2));
        const families::IdentityRecord* rec = families::find_identity(id);
        families::IdentityRecord built;
        if (!rec && id.rfind("thm5:", 0) == 0) {
            built = families::thm5_construct(
                (unsigned)std::stoul(id.substr(5)));
            rec = &built;
        }
        if (!rec) throw CLI::ValidationError("unknown identity: " + id);
        bool all_ok = true;
        for (long t = a; t <= b; ++t) {
            if (!rec->validity.admits(t)) continue;
            auto r = families::eval_identity(id, Rational(t), true);
            std::printf("%s t=%ld residual=%s %s\n", id.c_str(), t,
                        r.residual.get_str().c_str(), r.ok ? "ok" : "FAIL");
            all_ok = all_ok && r.ok;
        }
        return all_ok ? 0 : 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational points near plane curves and small |x^3 - y^2|"};
    app.require_subcommand(1);

    GlobalOpts g;

    // near
    auto* near = app.add_subcommand("near", "search near a plane curve");
    std::string curve_token, merit_min, residual_max;
    long height = 0;
    std::optional<long> patch_count;
    long near_budget = 0, tail_height = 0;
    near->add_option("--curve", curve_token,
                     "fermat:<n> | power:<s|pi> | klein | trinorm")
        ->required();
    near->add_option("--height", height, "height bound N")->required();
    near->add_option("--merit-min", merit_min, "min |merit| (exact decimal)");
    near->add_option("--residual-max", residual_max,
                     "max |residual| (exact decimal)");
    near->add_option("--patch-count", patch_count,
                     "uniform patches per height window");
    near->add_option("--box-budget", near_budget, "candidate budget per box")
        ->group("");
    near->add_option("--tail-height", tail_height,
                     "direct-scan below this height")
        ->group("");
    add_global(near, g);

    // hall / hall-direct
    auto* hall_cmd = app.add_subcommand("hall", "lattice search for |x^3-y^2|");
    auto* halld =
        app.add_subcommand("hall-direct", "direct-scan oracle for hall");
    std::string xmax_s, xmin_s = "1", rawthr = "200", ratmin = "1.0";
    double grid_factor = 1.0;
    std::string direct_below_s = "4096";
    long hall_budget = 0;
    for (CLI::App* c : {hall_cmd, halld}) {
        c->add_option("--xmax", xmax_s, "largest x")->required();
        c->add_option("--xmin", xmin_s, "smallest x");
        c->add_option("--raw-threshold", rawthr,
                      "T in |4x^3-3y^2| < T sqrt(x)");
        c->add_option("--ratio-min", ratmin, "report filter on sqrt(x)/|k|");
    }
    hall_cmd->add_option("--grid-factor", grid_factor, "b-grid spacing factor");
    hall_cmd->add_option("--direct-below", direct_below_s,
                         "direct scan below this x")
        ->group("");
    hall_cmd->add_option("--box-budget", hall_budget, "")->group("");
    add_global(hall_cmd, g);
    add_global(halld, g);

    // families
    auto* fam = app.add_subcommand("families", "polynomial identity registry");
    fam->require_subcommand(1);
    auto* fam_list = fam->add_subcommand("list", "registered names");
    auto* fam_verify = fam->add_subcommand("verify", "verify one identity");
    auto* fam_known =
        fam->add_subcommand("verify-known", "verify the published ledger");
    std::string fam_id, fam_trange = "-10..10";
    fam_verify->add_option("--id", fam_id, "identity name")->required();
    fam_verify->add_option("--t-range", fam_trange, "a..b");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (near->parsed())
            return run_near(curve_token, height, merit_min, residual_max,
                            patch_count, near_budget, tail_height, g);
        if (hall_cmd->parsed())
            return run_hall(parse_integer(xmax_s), parse_integer(xmin_s),
                            rawthr, ratmin, grid_factor,
                            parse_integer(direct_below_s), hall_budget, false,
                            g);
        if (halld->parsed())
            return run_hall(parse_integer(xmax_s), parse_integer(xmin_s),
                            rawthr, ratmin, 1.0, Integer(0), 0, true, g);
        if (fam->parsed())
            return run_families(fam_list, fam_verify, fam_known, fam_id,
                                fam_trange);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const lattice::BudgetExceeded& e) {
        std::fprintf(stderr, "budget exceeded: %s (estimate %.3g)\n",
                     e.where.c_str(), e.estimate);
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
