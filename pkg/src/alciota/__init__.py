"""ALC with local and global definite descriptions: syntax, semantics,
bisimulations, a tableau prover, translations and a benchmark generator."""

from .bisim import max_bisim_alc, max_bisim_alci, max_bisim_alcil, named_individuals
from .semantics import Interpretation, eval_concept, models_ontology, parse_interpretation
from .syntax import Ontology, parse_concept, parse_ontology, print_concept
from .tableau import ProverConfig, prove

__all__ = [
    "Interpretation",
    "Ontology",
    "ProverConfig",
    "eval_concept",
    "max_bisim_alc",
    "max_bisim_alci",
    "max_bisim_alcil",
    "models_ontology",
    "named_individuals",
    "parse_concept",
    "parse_interpretation",
    "parse_ontology",
    "print_concept",
    "prove",
]
