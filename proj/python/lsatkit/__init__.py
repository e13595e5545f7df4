"""Constraint-program toolkit for analytical and logical reasoning problems."""

from ._core import (
    Assignment,
    BindError,
    DataError,
    EntityCatalog,
    EvalError,
    EvalReport,
    ExpressionSet,
    GameConfig,
    LimitsExceeded,
    ParseError,
    ProblemRecord,
    Program,
    QuestionResult,
    ScoreScale,
    TriggerLexicon,
    UnsatisfiableError,
    annotate_positions,
    augment_negative,
    extend_closure,
    extract_entities,
    identify_logic,
    interpret_constraint,
    load_dataset,
    overall_score,
    parse_dataset,
    run_ar,
    run_lr_extend,
    score_option,
    select_answer,
    solve,
)

__all__ = [
    "Assignment",
    "BindError",
    "DataError",
    "EntityCatalog",
    "EvalError",
    "EvalReport",
    "ExpressionSet",
    "GameConfig",
    "LimitsExceeded",
    "ParseError",
    "ProblemRecord",
    "Program",
    "QuestionResult",
    "ScoreScale",
    "TriggerLexicon",
    "UnsatisfiableError",
    "annotate_positions",
    "augment_negative",
    "extend_closure",
    "extract_entities",
    "identify_logic",
    "interpret_constraint",
    "load_dataset",
    "overall_score",
    "parse_dataset",
    "run_ar",
    "run_lr_extend",
    "score_option",
    "select_answer",
    "solve",
]
