"""Word logic, bounded number logic, and the translations between them."""

from .numbers import (canonical_sentence, define_set, default_slack, eliminate_max, eval_num,
                      inject_canonical, num_to_sf, padded_membership, sf_to_num)
from .syntax import (check_number_formula, check_word_formula, free_vars, parse,
                     parse_number_formula, parse_word_formula, to_text)
from .words import WordModel, compile_sf, defines, eval_sf, word_model

__all__ = [
    "WordModel", "canonical_sentence", "check_number_formula", "check_word_formula",
    "compile_sf", "default_slack", "define_set", "defines", "eliminate_max", "eval_num", "eval_sf",
    "free_vars", "inject_canonical", "num_to_sf", "padded_membership", "parse",
    "parse_number_formula", "parse_word_formula", "sf_to_num", "to_text", "word_model",
]
