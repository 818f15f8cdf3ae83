#include "cli.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "oatk/errors.hpp"
#include "oatk/hash.hpp"
#include "oatk/oa.hpp"
#include "oatk/oa_io.hpp"
#include "oatk/verify.hpp"

namespace oatk {

namespace {

struct NuOption {
    std::uint64_t num = 6;
    std::uint64_t den = 1;
};

NuOption parse_nu(const std::string& text) {
    const std::size_t slash = text.find('/');
    NuOption nu;
    try {
        if (slash == std::string::npos) {
            nu.num = std::stoull(text);
            nu.den = 1;
        } else {
            nu.num = std::stoull(text.substr(0, slash));
            nu.den = std::stoull(text.substr(slash + 1));
        }
    } catch (const std::exception&) {
        throw ConfigError("--nu: expected NUM or NUM/DEN, got '" + text + "'");
    }
    if (nu.den == 0 || nu.num < nu.den)
        throw ConfigError("--nu: exponent must be a rational >= 1");
    return nu;
}

std::string ratio_text(const Ratio& r) {
    std::ostringstream os;
    os << r.num.str() << '/' << r.den.str();
    const double approx = r.num.convert_to<double>() / r.den.convert_to<double>();
    os << " (~" << std::setprecision(6) << approx << ')';
    return os.str();
}

// Prime-power factorization of n, ascending primes.
std::vector<std::uint64_t> prime_power_factors(std::uint64_t n) {
    std::vector<std::uint64_t> factors;
    std::uint64_t rest = n;
    for (std::uint64_t d = 2; d * d <= rest; ++d) {
        if (rest % d != 0) continue;
        std::uint64_t f = 1;
        while (rest % d == 0) {
            rest /= d;
            f *= d;
        }
        factors.push_back(f);
    }
    if (rest > 1) factors.push_back(rest);
    return factors;
}

struct FactorChoice {
    std::uint64_t alphabet = 0;
    bool bush = false; ///< false: rs plan for this factor
    bigint rows;
};

// Per prime-power factor: the classical construction when it applies
// (m <= factor), otherwise the code-based plan for that factor.
std::vector<FactorChoice> product_factor_choices(std::uint64_t n, std::uint32_t m,
                                                 std::uint32_t t) {
    std::vector<FactorChoice> choices;
    for (std::uint64_t f : prime_power_factors(n)) {
        FactorChoice c;
        c.alphabet = f;
        c.bush = (m <= f);
        if (c.bush) {
            bigint rows = 1;
            for (std::uint32_t i = 0; i < t; ++i) rows *= f;
            c.rows = rows;
        } else {
            c.rows = predicted_rows(plan_rs(f, m, t));
        }
        choices.push_back(std::move(c));
    }
    return choices;
}

OrthogonalArray build_factor_array(const FactorChoice& choice, std::uint32_t m, std::uint32_t t,
                                   const BuildOptions& opts) {
    if (choice.bush) return bush_oa(choice.alphabet, m, t, opts);
    return build_oa(plan_rs(choice.alphabet, m, t), opts);
}

struct BuildArgs {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t t = 0;
    std::string code = "rs";
    std::uint64_t seed = 0;
    std::uint64_t p_override = 0;
    std::string out;
    std::string format = "oa";
    bool csv_header = false;
    bool zero_based = false;
    bool dry_run = false;
    std::uint64_t max_cells = 100000000;
    std::uint64_t attempts = 1000;
    std::string nu = "6";
};

int cmd_build(const BuildArgs& args, std::ostream& out) {
    const NuOption nu = parse_nu(args.nu);
    if (args.p_override != 0 && args.code != "random")
        throw ConfigError("--p-override applies only to --code random");
    if (args.out.empty() && !args.dry_run)
        throw ConfigError("build: pass --out PATH (or --dry-run)");
    if (args.m == 0 || args.m > 0xffffffffULL || args.t == 0 || args.t > args.m)
        throw ConfigError("build: need 1 <= t <= m");
    const std::uint32_t m = static_cast<std::uint32_t>(args.m);
    const std::uint32_t t = static_cast<std::uint32_t>(args.t);

    BuildOptions bopts;
    bopts.max_cells = args.max_cells;

    const bigint rao = rao_bound(m, args.n, t);

    // Resolve the plan (or baseline) up front so --dry-run can report it.
    BuildPlan plan;
    bool have_plan = false;
    std::vector<FactorChoice> factors;
    bigint rows;
    if (args.code == "rs") {
        RsPlanOptions ropts;
        ropts.nu_num = nu.num;
        ropts.nu_den = nu.den;
        plan = plan_rs(args.n, m, t, ropts);
        have_plan = true;
        rows = predicted_rows(plan);
    } else if (args.code == "random") {
        RandomPlanOptions ropts;
        ropts.p_override = args.p_override;
        ropts.attempt_budget = args.attempts;
        plan = plan_random(args.n, m, t, args.seed, ropts);
        have_plan = true;
        rows = predicted_rows(plan);
    } else if (args.code == "bush") {
        rows = 1;
        for (std::uint32_t i = 0; i < t; ++i) rows *= args.n;
        if (args.n < 2 || m > args.n || prime_power_factors(args.n).size() != 1)
            throw ConfigError("bush: needs a prime-power alphabet and m <= n");
    } else if (args.code == "product") {
        factors = product_factor_choices(args.n, m, t);
        if (factors.size() < 2)
            throw ConfigError("product: needs a composite alphabet with two or more "
                              "prime-power factors");
        rows = 1;
        for (const FactorChoice& c : factors) rows *= c.rows;
    } else {
        throw ConfigError("build: unknown --code '" + args.code + "'");
    }

    std::ostringstream summary;
    summary << "path=" << args.code << " n=" << args.n << " m=" << m << " t=" << t;
    if (have_plan)
        summary << " q=" << plan.q << " tau=" << plan.tau << " k=" << plan.code.dim;
    if (!factors.empty()) {
        summary << " factors=";
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) summary << ',';
            summary << factors[i].alphabet << (factors[i].bush ? ":bush" : ":rs");
        }
    }
    bigint nt = 1;
    for (std::uint32_t i = 0; i < t; ++i) nt *= args.n;
    summary << " s=" << rows.str() << " lambda=" << bigint(rows / nt).str();
    summary << " rao=" << rao.str() << " ratio=" << ratio_text(size_ratio(rows, rao));

    if (args.dry_run) {
        out << summary.str() << " dry_run=true\n";
        return 0;
    }

    std::ofstream file;
    std::ostream* sink_stream = &out;
    if (args.out != "-") {
        file.open(args.out, std::ios::binary);
        if (!file) throw ConfigError("build: cannot open '" + args.out + "' for writing");
        sink_stream = &file;
    }

    const bigint cells = rows * m;
    if (cells > args.max_cells)
        throw CapExceededError("build: " + rows.str() + " x " + std::to_string(m) +
                               " cells exceed the cap of " + std::to_string(args.max_cells));
    const std::uint64_t s = rows.convert_to<std::uint64_t>();
    const std::uint64_t lambda = bigint(rows / nt).convert_to<std::uint64_t>();

    std::uint64_t written = 0;
    auto run_stream = [&](const RowSink& sink) -> std::uint64_t {
        if (have_plan) return build_oa_stream(plan, sink, bopts);
        if (args.code == "bush") return bush_oa_stream(args.n, m, t, sink, bopts);
        OrthogonalArray acc = build_factor_array(factors[0], m, t, bopts);
        for (std::size_t i = 1; i + 1 < factors.size(); ++i)
            acc = product_oa(acc, build_factor_array(factors[i], m, t, bopts), bopts);
        return product_oa_stream(acc, build_factor_array(factors.back(), m, t, bopts), sink,
                                 bopts);
    };

    if (args.format == "oa") {
        OaTextWriter writer(*sink_stream, s, m, args.n, t, lambda);
        written = run_stream([&](std::span<const std::uint32_t> row, std::uint64_t repeat) {
            writer.row(row, repeat);
        });
        writer.finish();
    } else if (args.format == "csv") {
        CsvOptions copts;
        copts.header = args.csv_header;
        copts.zero_based = args.zero_based;
        CsvWriter writer(*sink_stream, m, copts);
        written = run_stream([&](std::span<const std::uint32_t> row, std::uint64_t repeat) {
            writer.row(row, repeat);
        });
    } else {
        throw ConfigError("build: unknown --format '" + args.format + "'");
    }
    if (written != s) throw std::logic_error("build: row count mismatch");

    if (args.out != "-") {
        file.close();
        out << summary.str() << " out=" << args.out << "\n";
    }
    return 0;
}

struct VerifyArgs {
    std::string in;
    std::uint64_t t = 0; ///< 0: use the header strength
    std::string report = "text";
    std::uint64_t max_work = 1000000000;
    std::uint32_t threads = 1;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
    const OrthogonalArray a = read_oa_file(args.in);
    const std::uint32_t t = args.t ? static_cast<std::uint32_t>(args.t) : a.t;
    VerifyOptions vopts;
    vopts.max_work = args.max_work;
    vopts.threads = args.threads;
    const VerifyReport report = verify_oa(a, t, vopts);

    if (args.report == "json") {
        nlohmann::json j;
        j["pass"] = report.pass;
        j["t"] = report.t;
        j["lambda"] = report.lambda;
        j["subsets"] = report.subsets;
        j["worst_dev"] = report.worst_dev;
        out << j.dump() << "\n";
    } else if (args.report == "text") {
        out << "pass=" << (report.pass ? "true" : "false") << " t=" << report.t
            << " lambda=" << report.lambda << " subsets=" << report.subsets
            << " worst_dev=" << report.worst_dev << " work=" << report.work;
        if (!report.note.empty()) out << " note=\"" << report.note << "\"";
        out << "\n";
    } else {
        throw ConfigError("verify: unknown --report '" + args.report + "'");
    }
    return report.pass ? 0 : 1;
}

struct HashNewArgs {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t t = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string mode = "lazy";
    std::string prime_search = "scan";
    std::string nu = "6";
};

void persist_hash(const HashFunction& h, const std::string& path) {
    const std::vector<std::uint8_t> bytes = h.serialize();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("hash: cannot open '" + path + "' for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

HashFunction load_hash(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("hash: cannot open '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return HashFunction::deserialize(bytes);
}

int cmd_hash_new(const HashNewArgs& args, std::ostream& out) {
    const NuOption nu = parse_nu(args.nu);
    HashFunction::CreateOptions opts;
    if (args.mode == "lazy")
        opts.mode = ReplacementMode::LazyCache;
    else if (args.mode == "derived")
        opts.mode = ReplacementMode::Derived;
    else
        throw ConfigError("hash new: unknown --mode '" + args.mode + "'");
    if (args.prime_search == "scan")
        opts.prime_mode = PrimeSearchConfig::Mode::Scan;
    else if (args.prime_search == "sample")
        opts.prime_mode = PrimeSearchConfig::Mode::Sample;
    else
        throw ConfigError("hash new: unknown --prime-search '" + args.prime_search + "'");
    opts.nu_num = nu.num;
    opts.nu_den = nu.den;
    if (args.t > 0xffffffffULL) throw ConfigError("hash new: strength out of range");

    const HashFunction h = HashFunction::create(args.n, args.m,
                                                static_cast<std::uint32_t>(args.t), args.seed,
                                                opts);
    persist_hash(h, args.out);
    out << "n=" << h.alphabet() << " m=" << h.domain() << " t=" << h.strength()
        << " p=" << h.prime() << " mode=" << args.mode << " bytes=" << h.serialize().size()
        << " out=" << args.out << "\n";
    return 0;
}

int cmd_hash_eval(const std::string& in, std::uint64_t x, std::ostream& out) {
    HashFunction h = load_hash(in);
    const std::vector<std::uint8_t> before = h.serialize();
    out << h.eval(x) << "\n";
    if (h.serialize() != before) persist_hash(h, in);
    return 0;
}

int cmd_hash_batch(const std::string& in, const std::string& inputs, std::ostream& out) {
    HashFunction h = load_hash(in);
    const std::vector<std::uint8_t> before = h.serialize();
    std::ifstream f(inputs);
    if (!f) throw ConfigError("hash batch: cannot open '" + inputs + "'");
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::uint64_t x = 0;
        try {
            x = std::stoull(line);
        } catch (const std::exception&) {
            throw ConfigError("hash batch: malformed input on line " + std::to_string(lineno));
        }
        out << h.eval(x) << "\n";
    }
    if (h.serialize() != before) persist_hash(h, in);
    return 0;
}

struct PrimeArgs {
    std::uint64_t eta = 0;
    std::uint64_t residue = 1;
    std::uint64_t min = 0;
    std::string mode = "scan";
    std::uint64_t seed = 0;
    std::string nu = "6";
    std::uint64_t attempts = 100000;
};

int cmd_prime(const PrimeArgs& args, std::ostream& out) {
    const NuOption nu = parse_nu(args.nu);
    PrimeSearchConfig cfg;
    cfg.modulus = args.eta;
    cfg.residue = args.residue;
    cfg.min_exclusive = args.min;
    cfg.nu_num = nu.num;
    cfg.nu_den = nu.den;
    cfg.seed = args.seed;
    cfg.sample_budget = args.attempts;
    if (args.mode == "scan")
        cfg.mode = PrimeSearchConfig::Mode::Scan;
    else if (args.mode == "sample")
        cfg.mode = PrimeSearchConfig::Mode::Sample;
    else
        throw ConfigError("prime: unknown --mode '" + args.mode + "'");
    out << find_prime_in_progression(cfg) << "\n";
    return 0;
}

struct CompareArgs {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t t = 0;
};

int cmd_compare(const CompareArgs& args, std::ostream& out) {
    if (args.m == 0 || args.m > 0xffffffffULL || args.t < 2 || args.t > args.m)
        throw ConfigError("compare: need 2 <= t <= m");
    const std::uint32_t m = static_cast<std::uint32_t>(args.m);
    const std::uint32_t t = static_cast<std::uint32_t>(args.t);

    const bigint rao = rao_bound(m, args.n, t);
    out << "rao      " << rao.str() << "  strength-" << t << " lower bound\n";

    const BuildPlan plan = plan_rs(args.n, m, t);
    const bigint rs_rows = predicted_rows(plan);
    out << "rs       " << rs_rows.str() << "  q=" << plan.q << " tau=" << plan.tau
        << " ratio=" << ratio_text(size_ratio(rs_rows, rao)) << "\n";

    const std::vector<std::uint64_t> factors = prime_power_factors(args.n);
    if (factors.size() == 1) {
        if (args.m <= args.n) {
            bigint rows = 1;
            for (std::uint32_t i = 0; i < t; ++i) rows *= args.n;
            out << "bush     " << rows.str() << "  lambda=1\n";
        } else {
            out << "bush     inapplicable (m > n)\n";
        }
        out << "product  inapplicable (n is a prime power)\n";
    } else {
        out << "bush     inapplicable (n is not a prime power)\n";
        const std::vector<FactorChoice> choices = product_factor_choices(args.n, m, t);
        bigint rows = 1;
        std::ostringstream desc;
        for (std::size_t i = 0; i < choices.size(); ++i) {
            rows *= choices[i].rows;
            if (i) desc << " x ";
            desc << choices[i].alphabet << (choices[i].bush ? ":bush(" : ":rs(")
                 << choices[i].rows.str() << ")";
        }
        out << "product  " << rows.str() << "  " << desc.str()
            << " ratio=" << ratio_text(size_ratio(rows, rao)) << "\n";
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"orthogonal array and universal hash toolkit", "oatk"};
    app.require_subcommand(1);

    BuildArgs build;
    CLI::App* build_cmd = app.add_subcommand("build", "construct an orthogonal array");
    build_cmd->add_option("--n", build.n, "alphabet size")->required();
    build_cmd->add_option("--m", build.m, "number of columns")->required();
    build_cmd->add_option("--t", build.t, "strength")->required();
    build_cmd->add_option("--code", build.code, "construction path: rs|random|bush|product");
    build_cmd->add_option("--seed", build.seed, "seed for randomized paths");
    build_cmd->add_option("--p-override", build.p_override,
                          "explicit prime for --code random (desk-scale testing)");
    build_cmd->add_option("--out", build.out, "output path ('-' for stdout)");
    build_cmd->add_option("--format", build.format, "output format: oa|csv");
    build_cmd->add_flag("--csv-header", build.csv_header, "emit a CSV column header");
    build_cmd->add_flag("--zero-based", build.zero_based, "CSV values in [0, n)");
    build_cmd->add_flag("--dry-run", build.dry_run, "print the plan summary, write nothing");
    build_cmd->add_option("--max-cells", build.max_cells, "cap on s * m cells");
    build_cmd->add_option("--attempts", build.attempts, "sampling attempt budget");
    build_cmd->add_option("--nu", build.nu, "prime search exponent cap (NUM or NUM/DEN)");

    VerifyArgs verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "check strength exhaustively");
    verify_cmd->add_option("--in", verify.in, "orthogonal array file")->required();
    verify_cmd->add_option("--t", verify.t, "strength to test (default: header)");
    verify_cmd->add_option("--report", verify.report, "report format: text|json");
    verify_cmd->add_option("--max-work", verify.max_work, "cap on cells touched");
    verify_cmd->add_option("--threads", verify.threads, "worker threads");

    CompareArgs rao_args;
    CLI::App* rao_cmd = app.add_subcommand("rao", "print the Rao lower bound");
    rao_cmd->add_option("--m", rao_args.m, "number of columns")->required();
    rao_cmd->add_option("--n", rao_args.n, "alphabet size")->required();
    rao_cmd->add_option("--t", rao_args.t, "strength")->required();

    CLI::App* hash_cmd = app.add_subcommand("hash", "universal hash functions");
    hash_cmd->require_subcommand(1);
    HashNewArgs hash_new;
    CLI::App* hash_new_cmd = hash_cmd->add_subcommand("new", "draw and store a function");
    hash_new_cmd->add_option("--n", hash_new.n, "alphabet size")->required();
    hash_new_cmd->add_option("--m", hash_new.m, "domain size")->required();
    hash_new_cmd->add_option("--t", hash_new.t, "independence strength")->required();
    hash_new_cmd->add_option("--seed", hash_new.seed, "stream seed");
    hash_new_cmd->add_option("--out", hash_new.out, "output path")->required();
    hash_new_cmd->add_option("--mode", hash_new.mode, "replacement mode: lazy|derived");
    hash_new_cmd->add_option("--prime-search", hash_new.prime_search,
                             "prime selection: scan|sample");
    hash_new_cmd->add_option("--nu", hash_new.nu, "prime search exponent cap");

    std::string hash_in;
    std::uint64_t hash_x = 0;
    CLI::App* hash_eval_cmd = hash_cmd->add_subcommand("eval", "evaluate one input");
    hash_eval_cmd->add_option("--in", hash_in, "serialized function")->required();
    hash_eval_cmd->add_option("--x", hash_x, "input in [1, m]")->required();

    std::string batch_in, batch_inputs;
    CLI::App* hash_batch_cmd = hash_cmd->add_subcommand("batch", "evaluate a file of inputs");
    hash_batch_cmd->add_option("--in", batch_in, "serialized function")->required();
    hash_batch_cmd->add_option("--inputs", batch_inputs, "one input per line")->required();

    PrimeArgs prime;
    CLI::App* prime_cmd = app.add_subcommand("prime", "find a prime in a progression");
    prime_cmd->add_option("--eta", prime.eta, "progression modulus")->required();
    prime_cmd->add_option("--a", prime.residue, "residue class (default 1)");
    prime_cmd->add_option("--min", prime.min, "strict lower bound")->required();
    prime_cmd->add_option("--mode", prime.mode, "scan|sample");
    prime_cmd->add_option("--seed", prime.seed, "sampling seed");
    prime_cmd->add_option("--nu", prime.nu, "exponent cap (NUM or NUM/DEN)");
    prime_cmd->add_option("--attempts", prime.attempts, "sampling attempt budget");

    CompareArgs compare;
    CLI::App* compare_cmd = app.add_subcommand("compare", "size table across paths");
    compare_cmd->add_option("--n", compare.n, "alphabet size")->required();
    compare_cmd->add_option("--m", compare.m, "number of columns")->required();
    compare_cmd->add_option("--t", compare.t, "strength")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build_cmd->parsed()) return cmd_build(build, out);
        if (verify_cmd->parsed()) return cmd_verify(verify, out);
        if (rao_cmd->parsed()) {
            if (rao_args.t == 0 || rao_args.t > rao_args.m || rao_args.m > 0xffffffffULL)
                throw ConfigError("rao: need 1 <= t <= m");
            out << rao_bound(static_cast<std::uint32_t>(rao_args.m), rao_args.n,
                             static_cast<std::uint32_t>(rao_args.t))
                       .str()
                << "\n";
            return 0;
        }
        if (hash_cmd->parsed()) {
            if (hash_new_cmd->parsed()) return cmd_hash_new(hash_new, out);
            if (hash_eval_cmd->parsed()) return cmd_hash_eval(hash_in, hash_x, out);
            if (hash_batch_cmd->parsed()) return cmd_hash_batch(batch_in, batch_inputs, out);
        }
        if (prime_cmd->parsed()) return cmd_prime(prime, out);
        if (compare_cmd->parsed()) return cmd_compare(compare, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceededError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const SearchExhaustedError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

} // namespace oatk
