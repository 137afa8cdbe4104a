"""Weighted answer set programs: exact probabilistic inference, verified
compilations to ASP with weak constraints and to weighted-formula (Markov
logic) programs, plus ProbLog and Bayesian-network frontends."""

from .model import (
    HARD, Atom, Inequality, Interpretation, Literal, Program, Rule, Term,
    Weight, atom, const, desugar_choice, desugar_program, herbrand_base,
    merge_programs, soft, var,
)
from .parser import (
    LpmlnSyntaxError, SourceSpan, parse_evidence, parse_program,
    parse_query_spec, pretty_program,
)
from .grounder import (
    GroundProgram, GroundRule, GroundingError, check_safety, ground,
    ground_to_program,
)
from .engine import (
    EnumerationCapError, Reduct, enumerate_sm, is_stable_model, reduce_program,
)
from .inference import (
    Distribution, InconsistentEvidenceError, MapResult, NoStableModelsError,
    WeightVector, conditional, distribution, map_estimate, marginal,
    weight_penalty, weight_reward,
)
from .asp_backend import (
    TranslatedProgram, WeakConstraint, emit_asp_text, optimal_models,
    phi_extend, translate_penalty, translate_reward, wc_penalty,
)
from .mln_backend import (
    MlnDistribution, MlnFormula, MlnProgram, NotTightError, aux_extract,
    aux_mapping_text, complete, emit_mln_text, is_tight, mln_distribution,
    tseytin,
)
from .frontends import (
    BayesNet, MalformedNetworkError, bayes_to_lpmln, mln_embed,
    parse_bayes_net, parse_problog, problog_to_lpmln,
)

__version__ = "0.1.0"

from pathlib import Path as _Path

_FIXTURES = _Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> _Path:
    """Path of one of the shipped example programs under ``fixtures/``."""
    p = _FIXTURES / name
    if not p.exists():
        raise FileNotFoundError(f"no such fixture: {name}")
    return p
