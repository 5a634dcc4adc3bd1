"""Measurement channels: labelled branch (Kraus) operators on pol (x) position.

Three channel families cover the study:

* ``identity_channel`` - no interaction at all;
* ``scully_wwm`` - a which-way marker that flips the polarisation of
  the left half-line and leaves the spatial density untouched;
* ``classical_kick`` - random momentum kicks drawn from a positive
  distribution, the classical baseline for momentum disturbance.

Branches carry a ``sector`` label grouping the branches that originate
from a single unitary interaction.  Amplitudes are summed coherently
within a sector and incoherently across sectors.  The which-way marker
is one unitary realised as two half-line branches (one sector); each
classical kick is its own sector.  The distinction only matters once a
polarisation eraser recombines amplitudes: branches of one unitary can
interfere again, distinct classical outcomes cannot.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, GridMismatchError
from .grid import SimGrid
from .states import SlitGeometry, TransverseState

__all__ = [
    "Branch",
    "MeasurementChannel",
    "identity_channel",
    "scully_wwm",
    "classical_kick",
    "apply_channel",
]


@dataclass(frozen=True)
class Branch:
    """One labelled branch operator.

    kind "mask": multiply by the stored 0/1 support indicator, then
    apply the polarisation map.  kind "ramp": multiply both
    polarisations by amplitude * exp(i * q_kick * x).  kind
    "identity": pass through.
    """

    label: str
    sector: int
    kind: str
    pol: str = "keep"
    mask: np.ndarray | None = None
    q_kick: float = 0.0
    amplitude: float = 1.0

    def coefficient_sq(self, grid: SimGrid) -> np.ndarray:
        """Diagonal of K^dagger K (polarisation maps are unitary)."""
        if self.kind == "mask":
            return self.mask.astype(float)
        return np.full(grid.n_points, self.amplitude ** 2)

    def apply(self, state: TransverseState) -> TransverseState:
        h, v = state.amp_h, state.amp_v
        if self.pol == "swap":
            h, v = v, h
        if self.kind == "mask":
            h, v = h * self.mask, v * self.mask
        elif self.kind == "ramp":
            phase = self.amplitude * np.exp(1j * self.q_kick * state.grid.x)
            h, v = h * phase, v * phase
        return TransverseState(state.grid, h, v, state.sharp_edges)


@dataclass(frozen=True)
class MeasurementChannel:
    """A labelled Kraus set; ``grid`` is set for grid-bound channels."""

    name: str
    branches: tuple[Branch, ...]
    grid: SimGrid | None = None

    @property
    def sectors(self) -> tuple[int, ...]:
        seen: list[int] = []
        for b in self.branches:
            if b.sector not in seen:
                seen.append(b.sector)
        return tuple(seen)

    def completeness_defect(self, grid: SimGrid) -> float:
        """max |diag(sum_k K_k^dag K_k) - 1| over the position samples."""
        total = np.zeros(grid.n_points)
        for b in self.branches:
            total += b.coefficient_sq(grid)
        return float(np.max(np.abs(total - 1.0)))


def identity_channel() -> MeasurementChannel:
    """The do-nothing channel (single identity branch)."""
    return MeasurementChannel(
        "identity", (Branch("id", sector=0, kind="identity"),)
    )


def scully_wwm(geom: SlitGeometry, grid: SimGrid) -> MeasurementChannel:
    """Which-way marker: flip polarisation on x < 0, keep it on x >= 0.

    Acting at the slit-image plane, the half-line split is equivalent
    to projecting onto the individual slit supports (the field between
    the slits vanishes for any valid geometry) but is insensitive to
    how edge samples are assigned.  The summed spatial density is
    pointwise unchanged; only the polarisation record differs.  Both
    branches belong to one sector: together they form a single unitary.
    """
    if geom.separation <= geom.width:
        raise ConfigError("slits overlap; which-way marking is undefined")
    x = grid.x
    left = Branch("left", sector=0, kind="mask", pol="swap", mask=x < 0.0)
    right = Branch("right", sector=0, kind="mask", pol="keep", mask=x >= 0.0)
    return MeasurementChannel("scully_wwm", (left, right), grid)


def classical_kick(kicks: list[tuple[float, float]]) -> MeasurementChannel:
    """Random-momentum-kick channel from (q_j, prob_j) pairs.

    Branch j is sqrt(prob_j) * exp(i q_j x): a momentum translation by
    q_j occurring with probability prob_j.  Probabilities must be
    nonnegative and sum to one.
    """
    if not kicks:
        raise ConfigError("classical_kick needs at least one (q, prob) pair")
    probs = np.array([pr for _, pr in kicks], dtype=float)
    if np.any(probs < 0.0):
        raise ConfigError(f"negative kick probability in {kicks}")
    if abs(probs.sum() - 1.0) > 1e-12:
        raise ConfigError(f"kick probabilities sum to {probs.sum()}, not 1")
    branches = tuple(
        Branch(f"kick{j}", sector=j, kind="ramp", q_kick=float(q),
               amplitude=float(np.sqrt(pr)))
        for j, (q, pr) in enumerate(kicks)
    )
    return MeasurementChannel("classical_kick", branches)


def apply_channel(state: TransverseState,
                  ch: MeasurementChannel) -> list[tuple[str, TransverseState]]:
    """All branch outputs (label, unnormalised state).

    Branch norms squared sum to one for any normalised input by
    completeness of the Kraus set.
    """
    if ch.grid is not None and ch.grid != state.grid:
        raise GridMismatchError(
            f"channel {ch.name!r} built on a different grid than the state"
        )
    return [(b.label, b.apply(state)) for b in ch.branches]
