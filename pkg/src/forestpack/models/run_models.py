"""Models for command runs and sweep records."""

from dataclasses import dataclass
from enum import Enum, IntEnum
from pathlib import Path
from typing import Optional

from forestpack.models.errors import PreconditionError
from forestpack.models.packing_models import DEFAULT_BUDGET, SearchVerdict

REPORT_SCHEMA_VERSION = 1

# Multiples of k the sweep summary compares connectivity against
REFERENCE_MULTIPLIERS = (2, 9, 36)


class CommandType(Enum):
    """Commands exposed by the CLI."""

    CUT = "cut"
    PACK = "pack"
    SPLIT = "split"
    KGCHECK = "kgcheck"
    COUNTEREXAMPLE = "counterexample"
    SWEEP = "sweep"
    VERIFY = "verify"


class ExitCode(IntEnum):
    """Process exit codes."""

    SUCCESS = 0
    ERROR = 1
    INFEASIBLE = 2
    TIMEOUT = 3

    @classmethod
    def for_verdict(cls, verdict: SearchVerdict) -> "ExitCode":
        """Exit code reporting a search verdict."""
        return {
            SearchVerdict.FEASIBLE: cls.SUCCESS,
            SearchVerdict.INFEASIBLE: cls.INFEASIBLE,
            SearchVerdict.TIMEOUT: cls.TIMEOUT,
        }[verdict]


@dataclass(frozen=True)
class RunConfig:
    """Options shared by every command run.

    Attributes:
        command: Command being run
        graph_path: Input graph file, if the command reads one
        seed: Seed for every random choice
        budget: Node budget for exact searches
        output_path: Where the JSON or CSV result is written
    """

    command: CommandType
    graph_path: Optional[Path] = None
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    output_path: Optional[Path] = None

    def __post_init__(self):
        if self.budget <= 0:
            raise PreconditionError(f"Budget must be positive, got {self.budget}")


@dataclass(frozen=True)
class SweepParams:
    """Generator ranges for a connectivity sweep.

    Attributes:
        count: Number of instances
        n_min: Smallest vertex count
        n_max: Largest vertex count
        density: Expected edge multiplicity per vertex pair
        t: Number of terminal groups
        k_min: Smallest k
        k_max: Largest k
        connectivity: Per-group Steiner connectivity the generator aims for
        q: Degree multiplier for decompose_and_pack
    """

    count: int = 20
    n_min: int = 4
    n_max: int = 7
    density: float = 1.0
    t: int = 1
    k_min: int = 1
    k_max: int = 2
    connectivity: int = 0
    q: int = 36

    def __post_init__(self):
        if self.count < 0:
            raise PreconditionError("Instance count must be nonnegative")
        if not 2 <= self.n_min <= self.n_max:
            raise PreconditionError("Vertex range must satisfy 2 <= n_min <= n_max")
        if not 1 <= self.k_min <= self.k_max:
            raise PreconditionError("k range must satisfy 1 <= k_min <= k_max")
        if self.t < 1 or 2 * self.t > self.n_min:
            raise PreconditionError("Each of the t groups needs two of n_min vertices")
        if self.density <= 0:
            raise PreconditionError("Density must be positive")


@dataclass
class SweepRecord:
    """One sweep instance and its verdicts.

    Attributes:
        instance_id: Position in the sweep
        seed: Seed the instance was generated from
        n: Vertex count
        m: Edge count
        k: Number of forests
        t: Number of groups
        connectivities: Steiner connectivity of each group
        verdict: exact_pack verdict
        decompose: decompose_and_pack outcome, FEASIBLE or FAIL
        nodes: Search nodes used by exact_pack
        elapsed: Wall-clock seconds, when timing is enabled
    """

    instance_id: int
    seed: int
    n: int
    m: int
    k: int
    t: int
    connectivities: tuple[int, ...]
    verdict: SearchVerdict
    decompose: str
    nodes: int = 0
    elapsed: Optional[float] = None

    @property
    def min_connectivity(self) -> int:
        return min(self.connectivities, default=0)

    def row(self, timing: bool = False) -> dict:
        """CSV row; `elapsed` is included only when timing."""
        row = {
            "kind": "instance",
            "id": self.instance_id,
            "seed": self.seed,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "t": self.t,
            "connectivities": ";".join(map(str, self.connectivities)),
            "verdict": self.verdict.value,
            "decompose": self.decompose,
            "nodes": self.nodes,
        }
        if timing:
            row["elapsed"] = f"{self.elapsed:.4f}" if self.elapsed is not None else ""
        return row


@dataclass
class SweepSummary:
    """How instances at or above a reference connectivity line fared.

    Attributes:
        multiplier: Reference line as a multiple of k
        instances: Instances whose weakest group reaches multiplier * k
        feasible: How many of them exact_pack packed
        timeouts: How many of them hit the budget
    """

    multiplier: int
    instances: int = 0
    feasible: int = 0
    timeouts: int = 0

    def row(self, timing: bool = False) -> dict:
        """CSV row aligned with SweepRecord.row."""
        row = {
            "kind": f"summary_{self.multiplier}k",
            "id": "",
            "seed": "",
            "n": "",
            "m": "",
            "k": "",
            "t": "",
            "connectivities": f">={self.multiplier}k",
            "verdict": f"{self.feasible}/{self.instances}",
            "decompose": "",
            "nodes": self.timeouts,
        }
        if timing:
            row["elapsed"] = ""
        return row
