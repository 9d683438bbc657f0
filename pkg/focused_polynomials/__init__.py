from flask import Blueprint


DEFAULT_HAFNIAN_CAP = 20
DEFAULT_PERMANENT_CAP = 16
DEFAULT_TERM_CAP = 100_000
DEFAULT_DEGENERACY_TOLERANCE = 1e-12
DEFAULT_GAMMA = 64.0
DEFAULT_TRIALS = 11
DEFAULT_THREADS = 1
DEFAULT_PARTITION_CAP = 10**7

__version__ = "0.1"
__settings__ = {
    "FOCUSED_HAFNIAN_CAP": dict(
        description="Largest matrix order for which hafnians are computed exactly.",
        level="info",
        message_if_missing=f"'{DEFAULT_HAFNIAN_CAP}' will be used as a default.",
    ),
    "FOCUSED_PERMANENT_CAP": dict(
        description="Largest matrix order for which permanents are computed exactly.",
        level="info",
        message_if_missing=f"'{DEFAULT_PERMANENT_CAP}' will be used as a default.",
    ),
    "FOCUSED_TERM_CAP": dict(
        description="Largest number of terms a polynomial power may expand into.",
        level="info",
        message_if_missing=f"'{DEFAULT_TERM_CAP}' will be used as a default.",
    ),
    "FOCUSED_DEGENERACY_TOLERANCE": dict(
        description="Relative norm below which a projected generator counts as zero.",
        level="debug",
        message_if_missing=f"'{DEFAULT_DEGENERACY_TOLERANCE}' will be used as a default.",
    ),
    "FOCUSED_GAMMA": dict(
        description="Constant in the subspace dimension bound k >= gamma / (eps^2 delta^2) * ln(N+2).",
        level="info",
        message_if_missing=f"'{DEFAULT_GAMMA}' will be used as a default.",
    ),
    "FOCUSED_TRIALS": dict(
        description="Number of random subspaces whose median forms an estimate (odd).",
        level="info",
        message_if_missing=f"'{DEFAULT_TRIALS}' will be used as a default.",
    ),
    "FOCUSED_THREADS": dict(
        description="Number of worker threads for independent trials and restarts.",
        level="debug",
        message_if_missing=f"'{DEFAULT_THREADS}' will be used as a default.",
    ),
    "FOCUSED_PARTITION_CAP": dict(
        description="Largest brute-force size (M+1)^N of a vector partition instance.",
        level="debug",
        message_if_missing=f"'{DEFAULT_PARTITION_CAP}' will be used as a default.",
    ),
    "FOCUSED_LOGGING_LEVEL": dict(
        description="Level of the log messages written to stderr by the standalone `focused` command.",
        level="debug",
        message_if_missing="'WARNING' will be used as a default.",
    ),
}

focused_bp = Blueprint("focused", __name__, cli_group="focused")
focused_bp.cli.help = "Integration and optimization of focused polynomials"


from .matchings import commands as matching_commands  # noqa: E402,F401
from .integration import commands as integration_commands  # noqa: E402,F401
from .optimization import commands as optimization_commands  # noqa: E402,F401
from .hafnians import commands as hafnian_commands  # noqa: E402,F401
from .pairing import commands as pairing_commands  # noqa: E402,F401
