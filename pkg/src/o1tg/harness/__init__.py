"""Instance I/O, corpus generation, lemma suites, reports and the ``o1t`` CLI."""

from .corpus import CorpusInstance, default_families, generate_corpus, generate_instance
from .io import dumps_o1t, loads_instance, loads_o1t, read_instance, write_instance
from .lemmas import LemmaResult, run_lemma_suites
from .report import SCHEMA, AnalysisReport, Options, analyze

__all__ = [
    "SCHEMA",
    "AnalysisReport",
    "CorpusInstance",
    "LemmaResult",
    "Options",
    "analyze",
    "default_families",
    "dumps_o1t",
    "generate_corpus",
    "generate_instance",
    "loads_instance",
    "loads_o1t",
    "read_instance",
    "run_lemma_suites",
    "write_instance",
]
