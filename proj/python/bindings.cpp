#include "lsat/executor.hpp"
#include "lsat/game.hpp"
#include "lsat/harness.hpp"
#include "lsat/interpret.hpp"
#include "lsat/logic.hpp"
#include "lsat/program.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace py = pybind11;

namespace {

// Opaque handle so programs survive round-trips through Python unchanged.
struct PyProgram {
    lsat::program::Ast ast;
};

lsat::game::GameConfig make_config(const std::vector<std::string>& participants,
                                   const std::vector<std::string>& positions,
                                   const std::vector<std::optional<int>>& position_indices,
                                   bool ordered, const std::string& multiplicity,
                                   const std::vector<std::pair<int, int>>& capacities) {
    lsat::game::GameConfig cfg;
    for (std::size_t i = 0; i < participants.size(); ++i)
        cfg.participants.push_back({static_cast<int>(i), participants[i]});
    for (std::size_t i = 0; i < positions.size(); ++i) {
        std::optional<int> idx;
        if (i < position_indices.size()) idx = position_indices[i];
        cfg.positions.push_back({static_cast<int>(i), positions[i], idx});
    }
    cfg.ordered = ordered;
    if (multiplicity == "exactly-one")
        cfg.multiplicity = lsat::game::Multiplicity::ExactlyOne;
    else if (multiplicity == "at-most-one")
        cfg.multiplicity = lsat::game::Multiplicity::AtMostOne;
    else
        throw std::invalid_argument("multiplicity must be 'exactly-one' or 'at-most-one'");
    for (auto [lo, hi] : capacities) cfg.capacities.push_back({lo, hi});
    cfg.check();
    return cfg;
}

lsat::executor::ScoreMode mode_from(const std::string& name) {
    if (name == "count") return lsat::executor::ScoreMode::Count;
    if (name == "ratio") return lsat::executor::ScoreMode::Ratio;
    throw std::invalid_argument("mode must be 'count' or 'ratio'");
}

std::string section_name(lsat::harness::Section s) {
    switch (s) {
        case lsat::harness::Section::AR: return "AR";
        case lsat::harness::Section::LR: return "LR";
        default: return "RC";
    }
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Constraint-program toolkit for analytical and logical reasoning problems";

    py::register_exception<lsat::program::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<lsat::program::BindError>(m, "BindError", PyExc_ValueError);
    py::register_exception<lsat::program::EvalError>(m, "EvalError", PyExc_RuntimeError);
    py::register_exception<lsat::executor::UnsatisfiableError>(m, "UnsatisfiableError",
                                                              PyExc_RuntimeError);
    py::register_exception<lsat::executor::LimitsExceeded>(m, "LimitsExceeded", PyExc_RuntimeError);
    py::register_exception<lsat::harness::DataError>(m, "DataError", PyExc_ValueError);

    py::class_<lsat::game::GameConfig>(m, "GameConfig")
        .def(py::init(&make_config), py::arg("participants"), py::arg("positions"),
             py::arg("position_indices") = std::vector<std::optional<int>>{},
             py::arg("ordered") = false, py::arg("multiplicity") = "exactly-one",
             py::arg("capacities") = std::vector<std::pair<int, int>>{})
        .def_property_readonly("participant_count", &lsat::game::GameConfig::participant_count)
        .def_property_readonly("position_count", &lsat::game::GameConfig::position_count)
        .def_property_readonly("ordered",
                               [](const lsat::game::GameConfig& c) { return c.ordered; })
        .def_property_readonly("participants",
                               [](const lsat::game::GameConfig& c) {
                                   std::vector<std::string> out;
                                   for (const auto& p : c.participants) out.push_back(p.name);
                                   return out;
                               })
        .def_property_readonly("positions", [](const lsat::game::GameConfig& c) {
            std::vector<std::string> out;
            for (const auto& p : c.positions) out.push_back(p.name);
            return out;
        });

    py::class_<lsat::game::Assignment>(m, "Assignment")
        .def("digest", &lsat::game::Assignment::digest)
        .def("render", [](const lsat::game::Assignment& a,
                          const lsat::game::GameConfig& cfg) { return render(a, cfg); })
        .def("cell",
             [](const lsat::game::Assignment& a, int position, int participant) -> py::object {
                 switch (a.at(position, participant)) {
                     case lsat::game::CellState::True: return py::bool_(true);
                     case lsat::game::CellState::False: return py::bool_(false);
                     default: return py::none();
                 }
             },
             py::arg("position"), py::arg("participant"))
        .def("__eq__", [](const lsat::game::Assignment& a,
                          const lsat::game::Assignment& b) { return a == b; });

    py::class_<PyProgram>(m, "Program")
        .def_static("parse",
                    [](const std::string& text) {
                        return PyProgram{lsat::program::parse_program(text)};
                    })
        .def("bind",
             [](const PyProgram& p, const lsat::game::GameConfig& cfg) {
                 return PyProgram{lsat::program::bind(p.ast, cfg)};
             })
        .def("eval",
             [](const PyProgram& p, const lsat::game::Assignment& a,
                const lsat::game::GameConfig& cfg) -> py::object {
                 switch (lsat::program::eval(p.ast, a, cfg)) {
                     case lsat::program::TriBool::True: return py::bool_(true);
                     case lsat::program::TriBool::False: return py::bool_(false);
                     default: return py::none();
                 }
             })
        .def("free_entities",
             [](const PyProgram& p) { return lsat::program::free_entities(p.ast); })
        .def("__str__", [](const PyProgram& p) { return lsat::program::print_program(p.ast); })
        .def("__repr__", [](const PyProgram& p) {
            return "Program(" + lsat::program::print_program(p.ast) + ")";
        });

    m.def(
        "solve",
        [](const std::vector<PyProgram>& programs, const lsat::game::GameConfig& cfg,
           std::int64_t max_nodes, std::int64_t max_assignments) {
            std::vector<lsat::program::Ast> asts;
            for (const auto& p : programs) asts.push_back(p.ast);
            return lsat::executor::solve(asts, cfg,
                                         lsat::executor::SearchLimits{max_nodes, max_assignments});
        },
        py::arg("programs"), py::arg("config"), py::arg("max_nodes") = 1'000'000,
        py::arg("max_assignments") = 100'000);

    m.def(
        "score_option",
        [](const std::vector<lsat::game::Assignment>& legit, const PyProgram& option,
           const lsat::game::GameConfig& cfg, const std::string& mode) {
            return lsat::executor::score_option(legit, option.ast, cfg, mode_from(mode)).value;
        },
        py::arg("assignments"), py::arg("option"), py::arg("config"), py::arg("mode") = "ratio");

    m.def(
        "select_answer",
        [](const std::vector<double>& scores, const std::string& polarity) {
            std::vector<lsat::executor::OptionScore> wrapped;
            for (std::size_t i = 0; i < scores.size(); ++i)
                wrapped.push_back({static_cast<int>(i), lsat::executor::ScoreMode::Ratio,
                                   scores[i], false});
            auto pol = polarity == "negative" ? lsat::executor::Polarity::Negative
                                              : lsat::executor::Polarity::Positive;
            return lsat::executor::select_answer(wrapped, pol);
        },
        py::arg("scores"), py::arg("polarity") = "positive");

    py::class_<lsat::logic::ExpressionSet>(m, "ExpressionSet")
        .def(py::init<>())
        .def_static("parse", &lsat::logic::ExpressionSet::deserialize)
        .def("serialize", &lsat::logic::ExpressionSet::serialize)
        .def("__len__", &lsat::logic::ExpressionSet::size)
        .def("__eq__", [](const lsat::logic::ExpressionSet& a,
                          const lsat::logic::ExpressionSet& b) { return a == b; })
        .def("__str__", &lsat::logic::ExpressionSet::serialize);

    m.def("extend_closure", &lsat::logic::extend_closure, py::arg("expressions"));

    m.def(
        "identify_logic",
        [](const std::vector<std::string>& sentences,
           const std::vector<std::vector<std::tuple<std::size_t, std::size_t, int>>>& spans) {
            std::vector<std::vector<lsat::logic::SymbolSpan>> conv;
            for (const auto& sent : spans) {
                conv.emplace_back();
                for (auto [b, e, sym] : sent) conv.back().push_back({b, e, sym});
            }
            return lsat::logic::identify_logic(sentences, conv);
        },
        py::arg("sentences"), py::arg("spans"));

    m.def(
        "augment_negative",
        [](const lsat::logic::ExpressionSet& s, const std::string& op, std::uint64_t seed) {
            lsat::logic::AugmentOp o;
            if (op == "delete")
                o = lsat::logic::AugmentOp::Delete;
            else if (op == "reverse")
                o = lsat::logic::AugmentOp::ReverseConditional;
            else if (op == "negate")
                o = lsat::logic::AugmentOp::NegateSymbol;
            else
                throw std::invalid_argument("op must be 'delete', 'reverse' or 'negate'");
            return lsat::logic::augment_negative(s, o, seed);
        },
        py::arg("expressions"), py::arg("op"), py::arg("seed") = 0);

    py::class_<lsat::interpret::EntityCatalog>(m, "EntityCatalog")
        .def_property_readonly("participants",
                               [](const lsat::interpret::EntityCatalog& c) {
                                   std::vector<std::string> out;
                                   for (const auto& e : c.participants) out.push_back(e.name);
                                   return out;
                               })
        .def_property_readonly("positions", [](const lsat::interpret::EntityCatalog& c) {
            std::vector<std::string> out;
            for (const auto& e : c.positions) out.push_back(e.name);
            return out;
        });

    m.def("extract_entities", &lsat::interpret::extract_entities, py::arg("context"));

    py::class_<lsat::interpret::TriggerLexicon>(m, "TriggerLexicon")
        .def_static("builtin",
                    []() { return lsat::interpret::TriggerLexicon::builtin(); })
        .def_static("parse", &lsat::interpret::TriggerLexicon::parse)
        .def_static("load_file", &lsat::interpret::TriggerLexicon::load_file)
        .def("__len__",
             [](const lsat::interpret::TriggerLexicon& l) { return l.rules().size(); });

    m.def(
        "interpret_constraint",
        [](const std::string& sentence, const lsat::interpret::EntityCatalog& cat,
           const lsat::interpret::TriggerLexicon& lex) {
            auto r = lsat::interpret::interpret_constraint(sentence, cat, lex);
            std::optional<std::string> text;
            if (r.ast) text = lsat::program::print_program(*r.ast);
            return std::make_pair(text, r.diagnostic);
        },
        py::arg("sentence"), py::arg("catalog"), py::arg("lexicon"));

    m.def("annotate_positions", &lsat::interpret::annotate_positions, py::arg("text"));

    py::class_<lsat::harness::ProblemRecord>(m, "ProblemRecord")
        .def_readonly("id", &lsat::harness::ProblemRecord::id)
        .def_property_readonly(
            "section",
            [](const lsat::harness::ProblemRecord& r) { return section_name(r.section); })
        .def_readonly("context", &lsat::harness::ProblemRecord::context)
        .def_readonly("question", &lsat::harness::ProblemRecord::question)
        .def_readonly("options", &lsat::harness::ProblemRecord::options)
        .def_readonly("label", &lsat::harness::ProblemRecord::label)
        .def("__repr__", [](const lsat::harness::ProblemRecord& r) {
            return "ProblemRecord(id=" + r.id + ")";
        });

    py::class_<lsat::harness::QuestionResult>(m, "QuestionResult")
        .def_readonly("id", &lsat::harness::QuestionResult::id)
        .def_readonly("predicted", &lsat::harness::QuestionResult::predicted)
        .def_readonly("gold", &lsat::harness::QuestionResult::gold)
        .def_readonly("scores", &lsat::harness::QuestionResult::scores)
        .def_readonly("diagnostic", &lsat::harness::QuestionResult::diagnostic)
        .def_readonly("extended_contexts", &lsat::harness::QuestionResult::extended_contexts);

    py::class_<lsat::harness::EvalReport>(m, "EvalReport")
        .def_readonly("questions", &lsat::harness::EvalReport::questions)
        .def_readonly("total", &lsat::harness::EvalReport::total)
        .def_readonly("correct", &lsat::harness::EvalReport::correct)
        .def_readonly("skipped", &lsat::harness::EvalReport::skipped)
        .def_readonly("accuracy_percent", &lsat::harness::EvalReport::accuracy_percent)
        .def_readonly("interpreted_sentences", &lsat::harness::EvalReport::interpreted_sentences)
        .def_readonly("attempted_sentences", &lsat::harness::EvalReport::attempted_sentences);

    m.def("load_dataset", &lsat::harness::load_dataset, py::arg("path"), py::arg("seed") = 0);
    m.def("parse_dataset", &lsat::harness::parse_dataset, py::arg("text"), py::arg("seed") = 0);

    m.def(
        "run_ar",
        [](const std::vector<lsat::harness::ProblemRecord>& dataset,
           const lsat::interpret::TriggerLexicon& lex, const std::string& mode,
           std::uint64_t seed, bool random_on_failure, bool use_annotations,
           std::int64_t max_nodes, std::int64_t max_assignments) {
            lsat::harness::RunOptions opts;
            opts.mode = mode_from(mode);
            opts.seed = seed;
            opts.random_on_failure = random_on_failure;
            opts.use_annotated_programs = use_annotations;
            opts.limits = {max_nodes, max_assignments};
            return lsat::harness::run_ar(dataset, lex, opts);
        },
        py::arg("dataset"), py::arg("lexicon"), py::arg("mode") = "ratio", py::arg("seed") = 0,
        py::arg("random_on_failure") = false, py::arg("use_annotations") = true,
        py::arg("max_nodes") = 1'000'000, py::arg("max_assignments") = 100'000);

    m.def("run_lr_extend", &lsat::harness::run_lr_extend, py::arg("dataset"));

    py::class_<lsat::harness::ScoreScale>(m, "ScoreScale")
        .def(py::init<std::vector<std::pair<double, int>>>(), py::arg("anchors"))
        .def_static("builtin", &lsat::harness::ScoreScale::builtin)
        .def_static("load_file", &lsat::harness::ScoreScale::load_file)
        .def("scaled", &lsat::harness::ScoreScale::scaled, py::arg("raw_percent"));

    m.def("overall_score", &lsat::harness::overall_score, py::arg("ar_percent"),
          py::arg("lr_percent"), py::arg("rc_percent"));
}
