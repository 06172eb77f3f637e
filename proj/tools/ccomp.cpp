// ccomp: command-line front end for common-composite search, fiber analysis and refutation.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "cli_commands.hpp"

using namespace ccomp;
using namespace ccomp::cli;

namespace {

struct Flags {
    RunConfig cfg;
    std::string config_path;
    std::string format = "text";
};

void add_common(CLI::App* sub, Flags& f, bool pair)
{
    sub->add_option("--field", f.cfg.field, "GF(p), GF(p^n), GF(p^n; m=...) or QQ");
    sub->add_option("--f1", f.cfg.f1, "first polynomial");
    if (pair)
        sub->add_option("--f2", f.cfg.f2, "second polynomial");
    sub->add_option("--seed", f.cfg.seed, "seed for field construction and root splitting");
    sub->add_option("--output", f.cfg.output, "write the result here instead of stdout");
    sub->add_option("--format", f.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--config", f.config_path, "key=value file supplying defaults");
}

std::vector<std::string> explicit_keys(const CLI::App* sub)
{
    std::vector<std::string> keys;
    for (const CLI::Option* o : sub->get_options()) {
        if (o->count() > 0) {
            std::string name = o->get_name();
            while (!name.empty() && name.front() == '-')
                name.erase(name.begin());
            keys.push_back(name);
            std::replace(name.begin(), name.end(), '-', '_');
            keys.push_back(name);
        }
    }
    return keys;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Common composites of polynomial pairs: search, decide, refute, verify"};
    app.require_subcommand(1);
    Flags f;
    if (const char* env = std::getenv("CCOMP_SEED")) {
        try {
            f.cfg.seed = ccomp::detail::parse_u64(env);
        } catch (const Error& e) {
            std::cerr << "error: CCOMP_SEED: " << e.what() << "\n";
            return exit_usage;
        }
    }

    auto* search = app.add_subcommand("search", "bounded search for a common composite");
    add_common(search, f, true);
    search->add_option("--bound", f.cfg.bound, "largest degree examined");
    search->add_option("--method", f.cfg.method, "lin, fiber or both")->check(CLI::IsMember({"lin", "fiber", "both"}));

    auto* analyze = app.add_subcommand("analyze", "search, fiber closure and refutation in turn");
    add_common(analyze, f, true);
    analyze->add_option("--bound", f.cfg.bound, "search bound");
    analyze->add_option("--point", f.cfg.points, "closure seed point (repeatable)");
    analyze->add_option("--max-size", f.cfg.max_size, "closure size cap");
    analyze->add_option("--max-ext", f.cfg.max_ext, "ambient degree cap");
    analyze->add_option("--max-d", f.cfg.max_d, "longest cycle searched");

    auto* refute_cmd = app.add_subcommand("refute", "look for a fiber cycle that rules out a composite");
    add_common(refute_cmd, f, true);
    refute_cmd->add_option("--max-d", f.cfg.max_d, "longest cycle searched");
    refute_cmd->add_option("--max-ext", f.cfg.max_ext, "ambient degree cap");

    auto* fiber_cmd = app.add_subcommand("fiber", "fibers of f1, or compatible closures when --f2 is given");
    add_common(fiber_cmd, f, true);
    fiber_cmd->add_option("--point", f.cfg.points, "value or seed point (repeatable)");
    fiber_cmd->add_option("--max-size", f.cfg.max_size, "closure size cap");
    fiber_cmd->add_option("--max-ext", f.cfg.max_ext, "ambient degree cap");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "re-check a certificate or report file");
    verify->add_option("path", verify_path, "certificate file")->required();
    verify->add_option("--format", f.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));

    std::uint64_t dickson_n = 0;
    std::string dickson_alpha;
    auto* dick = app.add_subcommand("dickson", "print D_n(x, alpha)");
    dick->add_option("n", dickson_n, "index")->required();
    dick->add_option("alpha", dickson_alpha, "parameter")->required();
    dick->add_option("--field", f.cfg.field, "field (default QQ)");
    dick->add_option("--format", f.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));

    std::string family = "all";
    std::size_t count = 20;
    auto* corpus = app.add_subcommand("gen-corpus", "emit family instances with expected composite degrees");
    corpus->add_option("--family", family, "all, additive, shifted, deg2 or tame");
    corpus->add_option("--count", count, "number of instances");
    corpus->add_option("--seed", f.cfg.seed, "generator seed");
    corpus->add_option("--output", f.cfg.output, "output file");
    corpus->add_option("--format", f.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    CLI::App* used = app.get_subcommands().front();
    try {
        if (!f.config_path.empty()) {
            auto keys = explicit_keys(used);
            apply_config(f.cfg, KeyValueDoc::parse(read_file(f.config_path)), keys);
            if (std::find(keys.begin(), keys.end(), "format") == keys.end() && f.cfg.format == Format::machine)
                f.format = "machine";
        }
        f.cfg.format = f.format == "machine" ? Format::machine : Format::text;

        CommandResult r;
        if (used == search)
            r = cmd_search(f.cfg);
        else if (used == analyze)
            r = cmd_analyze(f.cfg);
        else if (used == refute_cmd)
            r = cmd_refute(f.cfg);
        else if (used == fiber_cmd)
            r = cmd_fiber(f.cfg);
        else if (used == verify)
            r = cmd_verify(verify_path, f.cfg);
        else if (used == dick)
            r = cmd_dickson(dickson_n, dickson_alpha, f.cfg);
        else
            r = cmd_gen_corpus(family, count, f.cfg);

        if (f.cfg.output.empty())
            std::cout << r.text;
        else
            write_file_atomic(f.cfg.output, r.text);
        return r.status;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}
