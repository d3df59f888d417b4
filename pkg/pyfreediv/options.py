"""Analysis options shared by the library entry points and the CLI."""
import json
from dataclasses import asdict, dataclass, fields

from .errors import PreconditionError

ROUTES = ("fitting", "rees", "both")


@dataclass(frozen=True)
class AnalysisOptions:
    """Switches for :func:`pyfreediv.divisor.analyze`.

    Args:
        rees: Run the Rees elimination (linear type by the rees route, syzygetic test).
        extend_n: Decide Koszul freeness in more than 3 variables (codim n).
        route: Linear-type route, one of ``fitting``, ``rees``, ``both``.
        gsc_budget: Number of perturbed lifts tried per saturation pivot.
        seed: Seed of every randomized retry.
        degree_cap: Degree bound for Rees eliminations.
        cramer: Run the GSC search when its hypotheses hold.
        saturation: Compute saturation data for homogeneous inputs.
        timings: Record wall-clock timings in the report.
    """

    rees: bool = False
    extend_n: bool = False
    route: str = "fitting"
    gsc_budget: int = 8
    seed: int = 0
    degree_cap: int = 30
    cramer: bool = True
    saturation: bool = True
    timings: bool = False

    def __post_init__(self):
        if self.route not in ROUTES:
            raise PreconditionError(f"unknown linear-type route {self.route!r}; expected one of {ROUTES}")
        if self.gsc_budget < 0:
            raise PreconditionError(f"gsc budget must be nonnegative, got {self.gsc_budget}")
        if self.degree_cap < 1:
            raise PreconditionError(f"degree cap must be positive, got {self.degree_cap}")

    @classmethod
    def from_dict(cls, config):
        """Build options from a mapping, rejecting unknown keys."""
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(config) - known)
        if unknown:
            raise PreconditionError(f"unknown option(s) {', '.join(unknown)}")
        return cls(**config)

    @classmethod
    def from_json(cls, path):
        with open(path) as ff:
            return cls.from_dict(json.load(ff))

    def replace(self, **changes):
        values = asdict(self)
        values.update({k: v for k, v in changes.items() if v is not None})
        return AnalysisOptions(**values)

    def to_dict(self):
        return asdict(self)
