#include "lsat/harness.hpp"

#include "lsat/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace lsat::harness {

using nlohmann::json;

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

Section section_from(const std::string& s) {
    if (s == "AR") return Section::AR;
    if (s == "LR") return Section::LR;
    if (s == "RC") return Section::RC;
    throw DataError("unknown section: " + s);
}

std::string section_name(Section s) {
    switch (s) {
    case Section::AR: return "AR";
    case Section::LR: return "LR";
    case Section::RC: return "RC";
    }
    return "?";
}

Annotations parse_annotations(const json& j, const std::string& id) {
    Annotations a;
    if (j.contains("participants"))
        a.participants = j.at("participants").get<std::vector<std::string>>();
    if (j.contains("positions")) {
        for (const auto& p : j.at("positions")) {
            PositionSpec spec;
            if (p.is_string()) {
                spec.name = p.get<std::string>();
            } else {
                spec.name = p.at("name").get<std::string>();
                if (p.contains("aliases"))
                    spec.aliases = p.at("aliases").get<std::vector<std::string>>();
                if (p.contains("index")) spec.index = p.at("index").get<int>();
            }
            a.positions.push_back(std::move(spec));
        }
    }
    if (j.contains("ordered")) a.ordered = j.at("ordered").get<bool>();
    if (j.contains("multiplicity")) a.multiplicity = j.at("multiplicity").get<std::string>();
    if (j.contains("capacities"))
        for (const auto& c : j.at("capacities"))
            a.capacities.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
    if (j.contains("programs")) a.programs = j.at("programs").get<std::vector<std::string>>();
    if (j.contains("option_programs"))
        a.option_programs = j.at("option_programs").get<std::vector<std::string>>();
    if (j.contains("lr")) {
        LrAnnotations lr;
        const auto& jl = j.at("lr");
        for (const auto& s : jl.at("symbols"))
            lr.symbols.push_back({s.at("id").get<int>(), s.at("surface").get<std::string>()});
        for (const auto& s : jl.at("sentences")) {
            LrSentence sent;
            sent.text = s.at("text").get<std::string>();
            if (s.contains("spans"))
                for (const auto& sp : s.at("spans"))
                    sent.spans.push_back({sp.at(0).get<std::size_t>(), sp.at(1).get<std::size_t>(),
                                          sp.at(2).get<int>()});
            lr.sentences.push_back(std::move(sent));
        }
        a.lr = std::move(lr);
    }
    if (!a.option_programs.empty() && a.option_programs.size() != 5)
        throw DataError("record " + id + ": option_programs must have 5 entries");
    return a;
}

ProblemRecord parse_record(const std::string& line, std::size_t line_no, std::uint64_t seed) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& ex) {
        throw DataError("line " + std::to_string(line_no) + ": invalid JSON: " + ex.what());
    }
    ProblemRecord rec;
    try {
        rec.id = j.at("id").get<std::string>();
        rec.section = section_from(j.at("section").get<std::string>());
        rec.context = j.at("context").get<std::string>();
        rec.question = j.value("question", std::string());
        rec.options = j.at("options").get<std::vector<std::string>>();
        rec.label = j.at("label").get<int>();
        if (j.contains("polarity")) {
            std::string p = lower(j.at("polarity").get<std::string>());
            if (p == "negative")
                rec.polarity = executor::Polarity::Negative;
            else if (p != "positive")
                throw DataError("record " + rec.id + ": bad polarity " + p);
        }
        if (j.contains("annotations"))
            rec.annotations = parse_annotations(j.at("annotations"), rec.id);
    } catch (const json::exception& ex) {
        throw DataError("line " + std::to_string(line_no) + ": " + ex.what());
    }
    if (rec.options.size() == 4) {
        // pad with a seeded-random wrong choice
        Mcg64 rng(seed + 2654435761ULL * static_cast<std::uint64_t>(line_no));
        std::vector<int> wrong;
        for (int i = 0; i < 4; ++i)
            if (i != rec.label) wrong.push_back(i);
        rec.options.push_back(rec.options[static_cast<std::size_t>(
            wrong[static_cast<std::size_t>(rng.draw(wrong.size()))])]);
    }
    if (rec.options.size() != 5)
        throw DataError("record " + rec.id + ": expected 4 or 5 options, got " +
                        std::to_string(rec.options.size()));
    if (rec.label < 0 || rec.label > 4)
        throw DataError("record " + rec.id + ": label out of range");
    return rec;
}

} // namespace

std::vector<ProblemRecord> parse_dataset(const std::string& text, std::uint64_t seed) {
    std::vector<ProblemRecord> out;
    std::set<std::string> ids;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ProblemRecord rec = parse_record(line, line_no, seed);
        if (!ids.insert(rec.id).second) throw DataError("duplicate record id: " + rec.id);
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<ProblemRecord> load_dataset(const std::string& path, std::uint64_t seed) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str(), seed);
}

std::string serialize_record(const ProblemRecord& rec) {
    json j;
    j["id"] = rec.id;
    j["section"] = section_name(rec.section);
    j["context"] = rec.context;
    j["question"] = rec.question;
    j["options"] = rec.options;
    j["label"] = rec.label;
    if (rec.polarity == executor::Polarity::Negative) j["polarity"] = "negative";
    if (rec.annotations) {
        const Annotations& a = *rec.annotations;
        json ja = json::object();
        if (!a.participants.empty()) ja["participants"] = a.participants;
        if (!a.positions.empty()) {
            json jp = json::array();
            for (const auto& p : a.positions) {
                json e;
                e["name"] = p.name;
                if (!p.aliases.empty()) e["aliases"] = p.aliases;
                if (p.index) e["index"] = *p.index;
                jp.push_back(std::move(e));
            }
            ja["positions"] = std::move(jp);
        }
        if (a.ordered) ja["ordered"] = *a.ordered;
        if (a.multiplicity) ja["multiplicity"] = *a.multiplicity;
        if (!a.capacities.empty()) {
            json jc = json::array();
            for (auto [mn, mx] : a.capacities) jc.push_back(json::array({mn, mx}));
            ja["capacities"] = std::move(jc);
        }
        if (!a.programs.empty()) ja["programs"] = a.programs;
        if (!a.option_programs.empty()) ja["option_programs"] = a.option_programs;
        if (a.lr) {
            json jl;
            jl["symbols"] = json::array();
            for (const auto& s : a.lr->symbols)
                jl["symbols"].push_back({{"id", s.id}, {"surface", s.surface}});
            jl["sentences"] = json::array();
            for (const auto& s : a.lr->sentences) {
                json js;
                js["text"] = s.text;
                js["spans"] = json::array();
                for (const auto& sp : s.spans)
                    js["spans"].push_back(json::array({sp.begin, sp.end, sp.symbol}));
                jl["sentences"].push_back(std::move(js));
            }
            ja["lr"] = std::move(jl);
        }
        j["annotations"] = std::move(ja);
    }
    return j.dump();
}

std::pair<game::GameConfig, interpret::EntityCatalog> game_setup(const ProblemRecord& rec) {
    interpret::EntityCatalog cat;
    const Annotations* ann = rec.annotations ? &*rec.annotations : nullptr;
    if (ann && !ann->participants.empty() && !ann->positions.empty()) {
        for (const auto& n : ann->participants) cat.participants.push_back({n, {}});
        for (const auto& p : ann->positions) cat.positions.push_back({p.name, p.aliases});
    } else {
        cat = interpret::extract_entities(rec.context);
    }

    game::GameConfig cfg;
    for (std::size_t i = 0; i < cat.participants.size(); ++i)
        cfg.participants.push_back({static_cast<int>(i), cat.participants[i].name});
    for (std::size_t i = 0; i < cat.positions.size(); ++i) {
        game::Position pos{static_cast<int>(i), cat.positions[i].name, std::nullopt};
        if (ann && i < ann->positions.size()) pos.index = ann->positions[i].index;
        cfg.positions.push_back(std::move(pos));
    }
    bool has_indices = !cfg.positions.empty() &&
                       std::all_of(cfg.positions.begin(), cfg.positions.end(),
                                   [](const game::Position& p) { return p.index.has_value(); });
    cfg.ordered = ann && ann->ordered ? *ann->ordered : has_indices;
    if (ann && ann->multiplicity) {
        if (*ann->multiplicity == "at-most-one")
            cfg.multiplicity = game::Multiplicity::AtMostOne;
        else if (*ann->multiplicity != "exactly-one")
            throw DataError("record " + rec.id + ": bad multiplicity " + *ann->multiplicity);
    }
    if (ann && !ann->capacities.empty()) {
        if (ann->capacities.size() != cfg.positions.size())
            throw DataError("record " + rec.id + ": capacities/positions mismatch");
        for (auto [mn, mx] : ann->capacities) cfg.capacities.push_back({mn, mx});
    }
    cfg.check();
    return {std::move(cfg), std::move(cat)};
}

namespace {

// Sentences after the leading one, split on '.' and newlines.
std::vector<std::string> constraint_sentences(const std::string& context) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : context) {
        if (c == '.' || c == '\n') {
            if (cur.find_first_not_of(" \t") != std::string::npos) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (cur.find_first_not_of(" \t") != std::string::npos) out.push_back(cur);
    if (!out.empty()) out.erase(out.begin()); // leading sentence holds the setup
    return out;
}

} // namespace

EvalReport run_ar(const std::vector<ProblemRecord>& dataset, const interpret::TriggerLexicon& lex,
                  const RunOptions& opts) {
    EvalReport report;
    Mcg64 fallback_rng(opts.seed);
    for (const ProblemRecord& rec : dataset) {
        if (rec.section != Section::AR) continue;
        QuestionResult qr;
        qr.id = rec.id;
        qr.gold = rec.label;
        try {
            auto [cfg, cat] = game_setup(rec);

            std::vector<program::Ast> programs;
            const Annotations* ann = rec.annotations ? &*rec.annotations : nullptr;
            if (opts.use_annotated_programs && ann && !ann->programs.empty()) {
                for (const auto& text : ann->programs)
                    programs.push_back(program::bind(program::parse_program(text), cfg));
            } else {
                for (const auto& sent : constraint_sentences(rec.context)) {
                    ++report.attempted_sentences;
                    auto r = interpret::interpret_constraint(sent, cat, lex);
                    if (!r.ast) continue;
                    programs.push_back(program::bind(*r.ast, cfg));
                    ++report.interpreted_sentences;
                }
            }

            std::vector<game::Assignment> legit =
                executor::solve(programs, cfg, opts.limits, nullptr, opts.trace);

            std::vector<executor::OptionScore> scores;
            for (int oi = 0; oi < 5; ++oi) {
                std::optional<program::Ast> opt_ast;
                std::string diag;
                if (opts.use_annotated_programs && ann && !ann->option_programs.empty()) {
                    opt_ast = program::bind(
                        program::parse_program(ann->option_programs[static_cast<std::size_t>(oi)]),
                        cfg);
                } else {
                    auto r = interpret::interpret_option(
                        rec.question, rec.options[static_cast<std::size_t>(oi)], cat, lex);
                    if (r.ast)
                        opt_ast = program::bind(*r.ast, cfg);
                    else
                        diag = r.diagnostic;
                }
                executor::OptionScore s;
                s.option_index = oi;
                s.mode = opts.mode;
                if (opt_ast) {
                    s = executor::score_option(legit, *opt_ast, cfg, opts.mode);
                    s.option_index = oi;
                } else {
                    s.uninterpretable = true;
                    if (!qr.diagnostic.empty()) qr.diagnostic += "; ";
                    qr.diagnostic += "option " + std::to_string(oi + 1) + " uninterpretable" +
                                     (diag.empty() ? "" : ": " + diag);
                }
                scores.push_back(s);
            }
            for (const auto& s : scores) qr.scores.push_back(s.value);
            qr.predicted = executor::select_answer(scores, rec.polarity);
        } catch (const executor::UnsatisfiableError&) {
            qr.diagnostic = "unsatisfiable";
        } catch (const executor::LimitsExceeded& ex) {
            qr.diagnostic = std::string("limits exceeded: ") + ex.what();
        } catch (const std::exception& ex) {
            qr.diagnostic = ex.what();
        }
        if (qr.predicted < 0 && opts.random_on_failure)
            qr.predicted = static_cast<int>(fallback_rng.draw(5));
        ++report.total;
        if (qr.predicted == qr.gold) ++report.correct;
        report.questions.push_back(std::move(qr));
    }
    std::stable_sort(report.questions.begin(), report.questions.end(),
                     [](const QuestionResult& a, const QuestionResult& b) { return a.id < b.id; });
    report.accuracy_percent = accuracy(report);
    return report;
}

namespace {

const std::set<std::string>& stopwords() {
    static const std::set<std::string> sw = {
        "a",  "an",  "the",  "is",  "are",  "was", "were", "be",   "been", "being", "to",
        "of", "in",  "on",   "at",  "and",  "or",  "not",  "will", "would", "can",  "could",
        "if", "then", "do",  "does", "did", "you", "your", "it",   "its",  "that",  "this",
        "which", "who", "whom", "with", "for", "by", "as", "from", "than", "so"};
    return sw;
}

std::set<std::string> content_words(const std::string& text) {
    std::set<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty() && !stopwords().count(cur)) out.insert(cur);
        cur.clear();
    };
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'')
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else
            flush();
    }
    flush();
    return out;
}

std::size_t overlap(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::size_t n = 0;
    for (const auto& w : a)
        if (b.count(w)) ++n;
    return n;
}

} // namespace

EvalReport run_lr_extend(const std::vector<ProblemRecord>& dataset) {
    EvalReport report;
    for (const ProblemRecord& rec : dataset) {
        if (rec.section != Section::LR) continue;
        if (!rec.annotations || !rec.annotations->lr) {
            ++report.skipped;
            continue;
        }
        const LrAnnotations& lr = *rec.annotations->lr;
        QuestionResult qr;
        qr.id = rec.id;
        qr.gold = rec.label;

        std::vector<std::string> sentences;
        std::vector<std::vector<logic::SymbolSpan>> spans;
        for (const auto& s : lr.sentences) {
            sentences.push_back(s.text);
            std::vector<logic::SymbolSpan> sp;
            for (const auto& x : s.spans) sp.push_back({x.begin, x.end, x.symbol});
            spans.push_back(std::move(sp));
        }
        logic::ExpressionSet identified = logic::identify_logic(sentences, spans);
        logic::ExpressionSet extended = logic::extend_closure(identified);

        std::map<int, std::string> surfaces;
        for (const auto& s : lr.symbols) surfaces[s.id] = s.surface;

        std::set<std::string> context_words = content_words(rec.context);
        double best_score = -1.0;
        int best = 0;
        for (int oi = 0; oi < 5; ++oi) {
            const std::string& opt = rec.options[static_cast<std::size_t>(oi)];
            std::string opt_lower = lower(opt);
            std::set<int> opt_symbols;
            for (const auto& s : lr.symbols)
                if (opt_lower.find(lower(s.surface)) != std::string::npos) opt_symbols.insert(s.id);
            logic::ExpressionSet related = logic::select_related(extended, opt_symbols);
            std::string ext;
            for (const auto& i : related) {
                if (!ext.empty()) ext += "\n";
                ext += logic::verbalize(i, surfaces);
            }
            qr.extended_contexts[oi] = ext;
            // weak symbolic stand-in for the neural matcher
            std::set<std::string> ow = content_words(opt);
            double score = ext.empty()
                               ? 0.0
                               : static_cast<double>(overlap(ow, content_words(ext)));
            score += 0.001 * static_cast<double>(overlap(ow, context_words));
            qr.scores.push_back(score);
            if (score > best_score + 1e-12) {
                best_score = score;
                best = oi;
            }
        }
        qr.predicted = best;
        ++report.total;
        if (qr.predicted == qr.gold) ++report.correct;
        report.questions.push_back(std::move(qr));
    }
    std::stable_sort(report.questions.begin(), report.questions.end(),
                     [](const QuestionResult& a, const QuestionResult& b) { return a.id < b.id; });
    report.accuracy_percent = accuracy(report);
    return report;
}

double accuracy(const EvalReport& report) {
    if (report.total == 0) return 0.0;
    return 100.0 * static_cast<double>(report.correct) / static_cast<double>(report.total);
}

ScoreScale::ScoreScale(std::vector<std::pair<double, int>> anchors)
    : anchors_(std::move(anchors)) {
    if (anchors_.empty()) throw std::invalid_argument("score scale: empty anchor table");
    std::sort(anchors_.begin(), anchors_.end());
    for (std::size_t i = 1; i < anchors_.size(); ++i)
        if (anchors_[i].second < anchors_[i - 1].second)
            throw std::invalid_argument("score scale: anchors must be monotone");
    for (const auto& [raw, scaled] : anchors_)
        if (scaled < 120 || scaled > 180)
            throw std::invalid_argument("score scale: scaled scores must lie in [120,180]");
}

ScoreScale ScoreScale::builtin() {
    return ScoreScale({{30.9, 135}, {56.8, 151}, {58.0, 152}, {63.5, 155}, {69.1, 158}});
}

ScoreScale ScoreScale::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open score scale: " + path);
    json j = json::parse(in, nullptr, true, true);
    std::vector<std::pair<double, int>> anchors;
    for (const auto& a : j) anchors.emplace_back(a.at(0).get<double>(), a.at(1).get<int>());
    return ScoreScale(std::move(anchors));
}

int ScoreScale::scaled(double raw_percent) const {
    // extend the anchor table with (0,120) and (100,180) end segments
    std::vector<std::pair<double, int>> pts = anchors_;
    if (pts.front().first > 0.0) pts.insert(pts.begin(), {0.0, 120});
    if (pts.back().first < 100.0) pts.push_back({100.0, 180});
    if (raw_percent <= pts.front().first) return pts.front().second;
    if (raw_percent >= pts.back().first) return pts.back().second;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (raw_percent <= pts[i].first) {
            double t = (raw_percent - pts[i - 1].first) / (pts[i].first - pts[i - 1].first);
            double v = pts[i - 1].second + t * (pts[i].second - pts[i - 1].second);
            int r = static_cast<int>(std::lround(v));
            return std::clamp(r, 120, 180);
        }
    }
    return pts.back().second;
}

double overall_score(double ar_percent, double lr_percent, double rc_percent) {
    for (double v : {ar_percent, lr_percent, rc_percent})
        if (v < 0.0 || v > 100.0) throw std::invalid_argument("percent out of [0,100]");
    return (ar_percent + 2.0 * lr_percent + rc_percent) / 4.0;
}

} // namespace lsat::harness
