#include "acm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "acm/error.hpp"
#include "acm/identities.hpp"
#include "acm/structure.hpp"

namespace acm::cli {

namespace {

// ---------------------------------------------------------------------------
// Formatting

std::string json_number(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_string(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

std::string sci3(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

// Display width of UTF-8 text (code points).
std::size_t width(std::string_view s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
        return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
    }));
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (widths.size() <= i) widths.push_back(0);
            widths[i] = std::max(widths[i], width(row[i]));
        }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size()) line += std::string(widths[i] - width(row[i]) + 2, ' ');
        }
        out += line + "\n";
    }
    return out;
}

}  // namespace

std::string reports_to_json(const std::vector<CheckReport>& reports) {
    std::string out = "[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const CheckReport& r = reports[i];
        out += i == 0 ? "\n" : ",\n";
        out += "  {";
        out += "\"check_id\": " + json_string(r.check_id);
        out += ", \"mode\": " + json_string(mode_name(r.mode));
        out += ", \"description\": " + json_string(r.description);
        out += ", \"points_sampled\": " + std::to_string(r.points_sampled);
        out += ", \"seed\": " + std::to_string(r.seed);
        out += ", \"max_abs_residual\": " + json_number(r.max_abs_residual);
        out += ", \"premise_residual\": " + (r.premise_residual ? json_number(*r.premise_residual) : "null");
        out += ", \"tolerance\": " + json_number(r.tolerance);
        out += ", \"verdict\": " + json_string(verdict_name(r.verdict));
        out += ", \"worst_point\": [";
        for (std::size_t k = 0; k < r.worst_point.size(); ++k)
            out += (k ? ", " : "") + json_number(r.worst_point[k]);
        out += "]}";
    }
    out += reports.empty() ? "]\n" : "\n]\n";
    return out;
}

std::string reports_to_text(const std::vector<CheckReport>& reports) {
    std::vector<std::vector<std::string>> rows{{"id", "mode", "points", "max_residual", "tol", "verdict", "premise"}};
    for (const auto& r : reports)
        rows.push_back({r.check_id, std::string(mode_name(r.mode)), std::to_string(r.points_sampled),
                        sci3(r.max_abs_residual), sci3(r.tolerance), std::string(verdict_name(r.verdict)),
                        r.premise_residual ? sci3(*r.premise_residual) : "-"});
    return table(rows);
}

namespace {

struct RunConfig {
    std::string builtin_name;
    std::string spec_path;
    std::size_t points = 100;
    std::uint64_t seed = 42;
    double tol = 1e-9;
    std::string format = "text";
    std::string mode = "all";
    std::vector<std::string> checks;
    bool force = false;
};

class UsageError : public Error {
public:
    using Error::Error;
};

struct Loaded {
    AlmostContactStructure structure;
    bool from_spec;
};

Loaded load(const RunConfig& cfg) {
    if (!cfg.builtin_name.empty()) return {builtin(cfg.builtin_name), false};
    if (!cfg.spec_path.empty()) return {load_spec(cfg.spec_path), true};
    throw UsageError("no structure given: use --builtin NAME or --spec PATH");
}

// Returns the validated structure, or nullopt when validation failed.
std::optional<AlmostContactStructure> ensure_validated(const AlmostContactStructure& s, const RunConfig& cfg) {
    if (s.validated()) return s;
    return certify(s, cfg.points, cfg.seed, cfg.tol);
}

bool mode_selected(CheckMode mode, const std::string& filter) {
    if (filter == "assert") return mode != CheckMode::Audit;
    if (filter == "audit") return mode == CheckMode::Audit;
    return true;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    const Loaded l = load(cfg);
    auto reports = validate_structure(l.structure, cfg.points, cfg.seed, cfg.tol);
    const bool ok =
        std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.verdict != Verdict::Fail; });
    if (ok) {
        try {
            reports.push_back(audit_contact_form(l.structure, cfg.points, cfg.seed));
        } catch (const Error&) {
        }
    }
    if (cfg.format == "json") {
        out << reports_to_json(reports);
    } else {
        out << "# structure: " << l.structure.name() << "\n";
        out << "# points: " << cfg.points << "  seed: " << cfg.seed << "\n";
        out << reports_to_text(reports);
        out << (ok ? "structure valid\n" : "structure INVALID\n");
    }
    return ok ? kExitOk : kExitAssertFailure;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Loaded l = load(cfg);
    auto validated = ensure_validated(l.structure, cfg);
    if (!validated && !cfg.force) {
        err << "error: structure not validated (fix the structure or pass --force)\n";
        return kExitUsage;
    }
    const AlmostContactStructure& s = validated ? *validated : l.structure;
    const Classification c = classify_T(s, cfg.points, cfg.seed, cfg.tol, true);
    if (cfg.format == "json") {
        out << "{\"structure\": " << json_string(s.name()) << ", \"validated\": " << (validated ? "true" : "false")
            << ", \"first_class\": " << (c.first_class ? "true" : "false")
            << ", \"second_class\": " << (c.second_class ? "true" : "false")
            << ", \"first_class_residual\": " << json_number(c.first_residual)
            << ", \"second_class_residual\": " << json_number(c.second_residual)
            << ", \"label\": " << json_string(c.label()) << ", \"points_sampled\": " << c.points
            << ", \"seed\": " << c.seed << ", \"tolerance\": " << json_number(c.tolerance) << "}\n";
    } else {
        if (!validated) out << "# WARNING: structure unvalidated\n";
        out << "# structure: " << s.name() << "\n";
        out << "first-class: " << (c.first_class ? "yes" : "no") << "; second-class: " << (c.second_class ? "yes" : "no")
            << "\n";
        out << "first-class residual: " << sci3(c.first_residual) << "\n";
        out << "second-class residual: " << sci3(c.second_residual) << "\n";
        out << "label: " << c.label() << "\n";
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<const TheoremCheck*> selected;
    if (cfg.checks.empty()) {
        for (const auto& c : registry())
            if (mode_selected(c.mode, cfg.mode)) selected.push_back(&c);
    } else {
        for (const auto& c : registry())
            if (std::find(cfg.checks.begin(), cfg.checks.end(), c.id) != cfg.checks.end() &&
                mode_selected(c.mode, cfg.mode))
                selected.push_back(&c);
    }

    const Loaded l = load(cfg);
    auto validated = ensure_validated(l.structure, cfg);
    if (!validated && !cfg.force) {
        err << "error: structure not validated (fix the structure or pass --force)\n";
        return kExitUsage;
    }
    const AlmostContactStructure& s = validated ? *validated : l.structure;

    std::vector<CheckReport> reports;
    for (const TheoremCheck* c : selected) reports.push_back(run_check(s, *c, cfg.points, cfg.seed, cfg.tol, true));
    const bool ok =
        std::none_of(reports.begin(), reports.end(), [](const auto& r) { return r.verdict == Verdict::Fail; });

    if (cfg.format == "json") {
        out << reports_to_json(reports);
    } else {
        if (!validated) out << "# WARNING: structure unvalidated\n";
        out << "# structure: " << s.name() << "\n";
        out << "# points: " << cfg.points << "  seed: " << cfg.seed << "  mode: " << cfg.mode << "\n";
        out << "# U is read as the structure vector T; rho as T\n";
        out << reports_to_text(reports);
        out << (ok ? "all asserted checks passed\n" : "ASSERTED CHECKS FAILED\n");
    }
    return ok ? kExitOk : kExitAssertFailure;
}

int cmd_list(const RunConfig& cfg, std::ostream& out) {
    std::vector<const TheoremCheck*> selected;
    for (const auto& c : registry())
        if (mode_selected(c.mode, cfg.mode)) selected.push_back(&c);
    if (cfg.format == "json") {
        out << "[";
        for (std::size_t i = 0; i < selected.size(); ++i) {
            const auto* c = selected[i];
            out << (i ? ",\n" : "\n") << "  {\"id\": " << json_string(c->id)
                << ", \"mode\": " << json_string(mode_name(c->mode)) << ", \"location\": " << json_string(c->location)
                << ", \"description\": " << json_string(c->description) << "}";
        }
        out << (selected.empty() ? "]\n" : "\n]\n");
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto* c : selected) rows.push_back({c->id, std::string(mode_name(c->mode)), c->location, c->description});
        out << table(rows);
    }
    return kExitOk;
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool structure) {
    if (structure) {
        auto* b = cmd->add_option("--builtin", cfg.builtin_name, "builtin structure name");
        auto* s = cmd->add_option("--spec", cfg.spec_path, "manifold-spec file");
        b->excludes(s);
        cmd->add_option("--points", cfg.points, "sample points")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", cfg.seed, "sampler seed");
        cmd->add_option("--tol", cfg.tol, "absolute tolerance")->check(CLI::PositiveNumber);
        cmd->add_option("--check", cfg.checks, "check id (repeatable)");
        cmd->add_flag("--force", cfg.force, "run on a structure that fails validation");
    }
    cmd->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--mode", cfg.mode, "all, assert or audit")->check(CLI::IsMember({"all", "assert", "audit"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Checks almost contact metric structures and the semi-symmetric non-metric connection", "acmcheck"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto* validate = app.add_subcommand("validate", "check the structure axioms");
    auto* classify = app.add_subcommand("classify", "first/second class of the structure vector");
    auto* verify = app.add_subcommand("verify", "run identity and theorem checks");
    auto* audit = app.add_subcommand("audit", "run the audit checks only");
    auto* list = app.add_subcommand("list", "print the check registry");
    for (auto* c : {validate, classify, verify, audit}) add_common(c, cfg, true);
    add_common(list, cfg, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    for (const auto& id : cfg.checks) {
        if (!find_check(id)) {
            err << "error: unknown check id '" << id << "'\n";
            return kExitUsage;
        }
    }

    try {
        if (validate->parsed()) return cmd_validate(cfg, out);
        if (classify->parsed()) return cmd_classify(cfg, out, err);
        if (verify->parsed()) return cmd_verify(cfg, out, err);
        if (audit->parsed()) {
            if (cfg.mode == "all") cfg.mode = "audit";
            return cmd_verify(cfg, out, err);
        }
        if (list->parsed()) return cmd_list(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace acm::cli
