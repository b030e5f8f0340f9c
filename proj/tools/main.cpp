// Command-line surface: coloring counts and block invariants of arborescent
// closures by three independent routes, diagram export, and the cross-route
// consistency sweep.

#include "arblink/engine.hpp"
#include "arblink/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace arblink;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerification = 2;

struct InputArgs {
    std::string montesinos;
    std::string word;
    std::string pd_file;
};

struct OrderArgs {
    long long n = 0;
    std::string n_list;
};

std::vector<long long> resolve_orders(const OrderArgs& args) {
    std::vector<long long> out;
    if (args.n != 0 && !args.n_list.empty()) throw Error("give either --n or --n-list, not both");
    if (args.n != 0) {
        out.push_back(args.n);
    } else if (!args.n_list.empty()) {
        std::stringstream ss(args.n_list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                out.push_back(std::stoll(item));
            } catch (const std::exception&) {
                throw Error("malformed entry '" + item + "' in --n-list");
            }
        }
    }
    for (long long n : out) require_odd_order(n);
    return out;
}

// Exactly one input form; returns the word (when one exists) and the spec
// (when the input is a Montesinos string).
struct ResolvedInput {
    std::string text;
    std::optional<tangle::MontesinosSpec> spec;
    std::optional<tangle::Word> word;
    std::optional<diagram::PlanarDiagram> pd;
};

ResolvedInput resolve_input(const InputArgs& args) {
    int given = (!args.montesinos.empty()) + (!args.word.empty()) + (!args.pd_file.empty());
    if (given != 1) throw Error("exactly one of --montesinos, --word, --pd is required");
    ResolvedInput in;
    if (!args.montesinos.empty()) {
        in.text = args.montesinos;
        in.spec = tangle::parse_montesinos(args.montesinos);
        in.word = tangle::montesinos_word(*in.spec);
    } else if (!args.word.empty()) {
        in.text = args.word;
        in.word = tangle::parse_word(args.word);
    } else {
        std::ifstream f(args.pd_file);
        if (!f) throw Error("cannot open PD file '" + args.pd_file + "'");
        std::stringstream buf;
        buf << f.rdbuf();
        in.text = args.pd_file;
        in.pd = diagram::from_pd_json(buf.str());
    }
    return in;
}

int run_cn(const InputArgs& input_args, const OrderArgs& order_args, const std::string& route,
           const std::string& format) {
    ResolvedInput in = resolve_input(input_args);
    std::vector<long long> orders = resolve_orders(order_args);
    if (orders.empty()) throw Error("--n or --n-list is required");

    const bool want_formula = route == "formula" || route == "all";
    const bool want_engine = route == "engine" || route == "all";
    const bool want_oracle = route == "oracle" || route == "all";
    if (want_formula && !in.spec && route == "formula")
        throw Error("the formula route needs a --montesinos input");
    if ((want_engine && route == "engine") && !in.word)
        throw Error("the engine route needs a --montesinos or --word input");

    ordered_json results = ordered_json::array();
    bool all_agree = true;
    for (long long n : orders) {
        ordered_json routes;
        std::optional<long long> first;
        bool agree = true;
        auto add = [&](const std::string& name, long long value) {
            routes[name] = value;
            if (!first)
                first = value;
            else
                agree = agree && *first == value;
        };
        if (want_formula && in.spec) add("formula", engine::coloring_count_formula(*in.spec, n));
        if (want_engine && in.word) add("engine", engine::coloring_count_engine(*in.word, n));
        if (want_oracle) {
            diagram::PlanarDiagram d = in.pd ? *in.pd : diagram::closure_trace(*in.word);
            add("oracle", static_cast<long long>(fox::count_colorings(d, n)));
        }
        if (routes.empty()) throw Error("no route applies to this input");
        ordered_json entry;
        entry["input"] = in.text;
        entry["n"] = n;
        entry["routes"] = routes;
        entry["agree"] = agree;
        results.push_back(entry);
        all_agree = all_agree && agree;
    }

    if (format == "json") {
        std::cout << (results.size() == 1 ? results.front().dump() : results.dump()) << "\n";
    } else {
        for (const auto& entry : results) {
            std::cout << "input " << entry["input"].get<std::string>() << "  n=" << entry["n"];
            for (auto& [key, value] : entry["routes"].items()) std::cout << "  " << key << "=" << value;
            std::cout << "  agree=" << (entry["agree"].get<bool>() ? "yes" : "no") << "\n";
        }
    }
    return all_agree ? kExitOk : kExitVerification;
}

int run_invariant(const InputArgs& input_args, const OrderArgs& order_args, const std::string& sign,
                  const std::string& format) {
    ResolvedInput in = resolve_input(input_args);
    if (!in.word) throw Error("the invariant command needs a --montesinos or --word input");
    std::vector<long long> orders = resolve_orders(order_args);
    if (orders.empty()) throw Error("--n or --n-list is required");

    ordered_json results = ordered_json::array();
    for (long long n : orders) {
        engine::InvariantReport rep = engine::invariant_report(*in.word, n);
        ordered_json entry;
        entry["input"] = in.text;
        entry["n"] = n;
        entry["value_plus"] = rep.value_plus;
        entry["value_minus"] = rep.value_minus;
        entry["writhe_parity"] = rep.writhe_parity;
        entry["cn"] = rep.cn;
        results.push_back(entry);
    }
    if (format == "json") {
        std::cout << (results.size() == 1 ? results.front().dump() : results.dump()) << "\n";
    } else {
        for (const auto& e : results) {
            std::cout << "input " << e["input"].get<std::string>() << "  n=" << e["n"];
            if (sign.empty() || sign == "+") std::cout << "  F(V+)=" << e["value_plus"];
            if (sign.empty() || sign == "-") std::cout << "  F(V-)=" << e["value_minus"];
            std::cout << "  writhe_parity=" << e["writhe_parity"] << "  cn=" << e["cn"] << "\n";
        }
    }
    return kExitOk;
}

int run_pd(const InputArgs& input_args) {
    ResolvedInput in = resolve_input(input_args);
    diagram::PlanarDiagram d;
    if (in.pd)
        d = *in.pd;
    else
        d = diagram::closure_trace(*in.word);
    std::cout << diagram::to_pd_json(d) << "\n";
    return kExitOk;
}

int run_check(const OrderArgs& order_args, const std::string& format) {
    std::vector<long long> orders = resolve_orders(order_args);
    if (orders.empty()) orders = harness::default_orders();
    harness::CheckReport report = harness::run_check(harness::builtin_corpus(), orders);
    if (format == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& row : report.rows) {
            ordered_json r;
            r["input"] = row.input;
            r["n"] = row.n;
            r["formula"] = row.formula;
            r["engine"] = row.engine;
            r["oracle"] = row.oracle;
            r["agree"] = row.agree;
            r["invariants_ok"] = row.invariants_ok;
            rows.push_back(r);
        }
        ordered_json out;
        out["rows"] = rows;
        out["all_ok"] = report.all_ok;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << harness::format_table(report);
    }
    return report.all_ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coloring counts and quantum invariants of arborescent closures"};
    app.require_subcommand(1);

    InputArgs input;
    OrderArgs orders;
    std::string route = "all";
    std::string format = "text";
    std::string sign;

    auto add_input = [&](CLI::App* cmd, bool with_pd) {
        cmd->add_option("--montesinos", input.montesinos, "comma-separated fractions, e.g. 1/3,-2,5/2");
        cmd->add_option("--word", input.word, "tangle word, e.g. rt(2)*rt(3)");
        if (with_pd) cmd->add_option("--pd", input.pd_file, "planar diagram JSON file");
    };
    auto add_orders = [&](CLI::App* cmd) {
        cmd->add_option("--n", orders.n, "odd order >= 3");
        cmd->add_option("--n-list", orders.n_list, "comma-separated odd orders");
    };

    CLI::App* cn = app.add_subcommand("cn", "number of n-colorings by the chosen routes");
    add_input(cn, true);
    add_orders(cn);
    cn->add_option("--route", route, "formula|engine|oracle|all")
        ->check(CLI::IsMember({"formula", "engine", "oracle", "all"}));
    cn->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    CLI::App* inv = app.add_subcommand("invariant", "block invariants F(K,V+), F(K,V-) of a knot closure");
    add_input(inv, false);
    add_orders(inv);
    inv->add_option("--sign", sign, "+|-")->check(CLI::IsMember({"+", "-"}));
    inv->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    CLI::App* pd = app.add_subcommand("pd", "emit the traced closure as PD JSON");
    add_input(pd, true);

    CLI::App* check = app.add_subcommand("check", "cross-route consistency sweep over the built-in corpus");
    add_orders(check);
    check->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (cn->parsed()) return run_cn(input, orders, route, format);
        if (inv->parsed()) return run_invariant(input, orders, sign, format);
        if (pd->parsed()) return run_pd(input);
        if (check->parsed()) return run_check(orders, format);
    } catch (const arblink::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
