// Command-line front end: AR solving, LR context extension, program
// parsing, score conversion, and position marking.
#include "lsat/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitLimits = 3;

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw lsat::harness::DataError("cannot write: " + out_path);
    out << payload;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lsat::harness::DataError("cannot read: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json report_json(const lsat::harness::EvalReport& r, bool with_extensions) {
    json j;
    j["total"] = r.total;
    j["correct"] = r.correct;
    j["skipped"] = r.skipped;
    j["accuracy_percent"] = r.accuracy_percent;
    if (r.attempted_sentences > 0) {
        j["attempted_sentences"] = r.attempted_sentences;
        j["interpreted_sentences"] = r.interpreted_sentences;
    }
    j["questions"] = json::array();
    for (const auto& q : r.questions) {
        json jq;
        jq["id"] = q.id;
        jq["predicted"] = q.predicted;
        jq["gold"] = q.gold;
        jq["scores"] = q.scores;
        if (!q.diagnostic.empty()) jq["diagnostic"] = q.diagnostic;
        if (with_extensions && !q.extended_contexts.empty()) {
            json ext = json::object();
            for (const auto& [oi, text] : q.extended_contexts)
                ext[std::to_string(oi + 1)] = text;
            jq["extended_contexts"] = std::move(ext);
        }
        j["questions"].push_back(std::move(jq));
    }
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LSAT logic-game solver and logical-inference toolkit"};
    app.require_subcommand(1);

    // solve-ar
    std::string ar_dataset, ar_lexicon, ar_mode = "ratio", ar_limits, ar_trace, ar_out;
    std::uint64_t ar_seed = 0;
    auto* solve_ar = app.add_subcommand("solve-ar", "Run the AR pipeline over a dataset");
    solve_ar->add_option("dataset", ar_dataset, "JSON-lines dataset")->required();
    solve_ar->add_option("--lexicon", ar_lexicon, "trigger lexicon file");
    solve_ar->add_option("--mode", ar_mode, "count|ratio")->check(CLI::IsMember({"count", "ratio"}));
    solve_ar->add_option("--limits", ar_limits, "max_nodes,max_assignments");
    solve_ar->add_option("--seed", ar_seed, "seed for padding/random fallback");
    solve_ar->add_option("--trace", ar_trace, "JSON-lines search trace output");
    solve_ar->add_option("--out", ar_out, "write report here instead of stdout");
    bool ar_no_annotations = false;
    solve_ar->add_flag("--no-annotations", ar_no_annotations,
                       "ignore annotated programs, use rule interpretation");

    // extend-lr
    std::string lr_dataset, lr_out;
    auto* extend_lr = app.add_subcommand("extend-lr", "Extend LR contexts symbolically");
    extend_lr->add_option("dataset", lr_dataset, "JSON-lines dataset")->required();
    extend_lr->add_option("--out", lr_out, "output directory for artifacts");

    // parse-program
    std::string pp_file, pp_out;
    auto* parse_prog = app.add_subcommand("parse-program", "Parse a program file (one per line)");
    parse_prog->add_option("file", pp_file, "program file, '#' comments")->required();
    parse_prog->add_option("--out", pp_out, "write result here instead of stdout");

    // score
    double sc_ar = 0, sc_lr = 0, sc_rc = 0;
    std::string sc_scale, sc_out;
    auto* score = app.add_subcommand("score", "Convert raw percents to LSAT-scale scores");
    score->add_option("--ar", sc_ar, "AR accuracy percent")->required();
    score->add_option("--lr", sc_lr, "LR accuracy percent")->required();
    score->add_option("--rc", sc_rc, "RC accuracy percent")->required();
    score->add_option("--scale", sc_scale, "score scale anchor file (JSON)");
    score->add_option("--out", sc_out, "write result here instead of stdout");

    // mark-positions
    std::string mp_file, mp_out;
    auto* mark = app.add_subcommand("mark-positions", "Label a text file with line/paragraph marks");
    mark->add_option("file", mp_file, "input text file")->required();
    mark->add_option("--out", mp_out, "write result here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve_ar) {
            lsat::harness::RunOptions opts;
            opts.seed = ar_seed;
            opts.mode = ar_mode == "count" ? lsat::executor::ScoreMode::Count
                                           : lsat::executor::ScoreMode::Ratio;
            opts.use_annotated_programs = !ar_no_annotations;
            if (!ar_limits.empty()) {
                std::istringstream ls(ar_limits);
                char comma = 0;
                if (!(ls >> opts.limits.max_nodes >> comma >> opts.limits.max_assignments) ||
                    comma != ',') {
                    std::cerr << "--limits expects N,M\n";
                    return kExitUsage;
                }
            }
            std::ofstream trace_file;
            if (!ar_trace.empty()) {
                trace_file.open(ar_trace);
                if (!trace_file) throw lsat::harness::DataError("cannot write: " + ar_trace);
                opts.trace = [&trace_file](const lsat::executor::TraceEvent& e) {
                    json j;
                    j["node"] = e.node;
                    j["parent"] = e.parent;
                    j["program"] = e.program_index;
                    j["verdict"] = std::string(1, e.verdict);
                    trace_file << j.dump() << '\n';
                };
            }
            auto dataset = lsat::harness::load_dataset(ar_dataset, ar_seed);
            lsat::interpret::TriggerLexicon lex =
                ar_lexicon.empty() ? lsat::interpret::TriggerLexicon::builtin()
                                   : lsat::interpret::TriggerLexicon::load_file(ar_lexicon);
            auto report = lsat::harness::run_ar(dataset, lex, opts);
            write_output(ar_out, report_json(report, false).dump(2) + "\n");
            for (const auto& q : report.questions)
                if (q.diagnostic.rfind("limits exceeded", 0) == 0) return kExitLimits;
        } else if (*extend_lr) {
            auto dataset = lsat::harness::load_dataset(lr_dataset);
            auto report = lsat::harness::run_lr_extend(dataset);
            if (!lr_out.empty()) {
                for (const auto& q : report.questions)
                    for (const auto& [oi, text] : q.extended_contexts)
                        write_output(lr_out + "/" + q.id + ".option" + std::to_string(oi + 1) +
                                         ".txt",
                                     text + "\n");
            }
            write_output("", report_json(report, true).dump(2) + "\n");
        } else if (*parse_prog) {
            std::istringstream in(read_file(pp_file));
            std::string line;
            json out = json::array();
            int lineno = 0;
            while (std::getline(in, line)) {
                ++lineno;
                std::size_t hash = line.find('#');
                if (hash != std::string::npos) line.erase(hash);
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                try {
                    auto ast = lsat::program::parse_program(line);
                    out.push_back({{"line", lineno},
                                   {"canonical", lsat::program::print_program(ast)}});
                } catch (const lsat::program::ParseError& ex) {
                    out.push_back({{"line", lineno}, {"error", ex.what()}});
                }
            }
            write_output(pp_out, out.dump(2) + "\n");
        } else if (*score) {
            lsat::harness::ScoreScale scale =
                sc_scale.empty() ? lsat::harness::ScoreScale::builtin()
                                 : lsat::harness::ScoreScale::load_file(sc_scale);
            double overall = lsat::harness::overall_score(sc_ar, sc_lr, sc_rc);
            json j;
            j["overall_percent"] = overall;
            j["overall_scaled"] = scale.scaled(overall);
            j["ar_scaled"] = scale.scaled(sc_ar);
            j["lr_scaled"] = scale.scaled(sc_lr);
            j["rc_scaled"] = scale.scaled(sc_rc);
            write_output(sc_out, j.dump(2) + "\n");
        } else if (*mark) {
            write_output(mp_out, lsat::interpret::annotate_positions(read_file(mp_file)));
        }
    } catch (const lsat::executor::LimitsExceeded& ex) {
        std::cerr << "error: " << ex.what() << " (nodes=" << ex.stats.nodes
                  << ", assignments=" << ex.stats.assignments << ")\n";
        return kExitLimits;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}
