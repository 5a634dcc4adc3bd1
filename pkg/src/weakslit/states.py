"""Initial transverse states: slit apertures and momentum-space Gaussians.

Every constructor returns a normalised two-polarisation state.  The
horizontal component carries the optical field at the aperture; the
vertical component starts empty and is populated only by which-way
tagging downstream.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import erf

from .errors import GeometryError, ResolutionError
from .grid import SimGrid

__all__ = [
    "SlitGeometry",
    "TransverseState",
    "build_double_slit",
    "build_single_slit",
    "build_momentum_peak",
]

#: Samples of clearance required between a slit edge and the grid boundary.
EDGE_MARGIN = 4


@dataclass(frozen=True)
class SlitGeometry:
    """Double-slit aperture parameters in internal length units.

    edge_profile is "sharp" for ideal top-hats or "gaussian_smoothed"
    for error-function edges of scale ``edge_scale`` (default width/10).
    Smoothed edges keep all momentum moments finite; sharp edges do not.
    """

    width: float
    separation: float
    edge_profile: str = "sharp"
    edge_scale: float | None = None

    def __post_init__(self):
        if not (self.separation > self.width > 0.0):
            raise GeometryError(
                f"need separation > width > 0, got separation={self.separation} "
                f"width={self.width}"
            )
        if self.edge_profile not in ("sharp", "gaussian_smoothed"):
            raise GeometryError(f"unknown edge_profile {self.edge_profile!r}")
        if self.edge_profile == "gaussian_smoothed" and self.edge_scale is None:
            object.__setattr__(self, "edge_scale", self.width / 10.0)
        if self.edge_scale is not None and not self.edge_scale > 0.0:
            raise GeometryError("edge_scale must be positive")

    @property
    def sharp(self) -> bool:
        return self.edge_profile == "sharp"


@dataclass
class TransverseState:
    """Two-polarisation complex field on a :class:`SimGrid`.

    ``sharp_edges`` records whether the construction used discontinuous
    apertures; moment computations refuse such states because their
    momentum variance diverges.
    """

    grid: SimGrid
    amp_h: np.ndarray
    amp_v: np.ndarray
    sharp_edges: bool = False

    def norm_sq(self) -> float:
        """Total probability, integrating both polarisations over x."""
        dens = np.abs(self.amp_h) ** 2 + np.abs(self.amp_v) ** 2
        return float(np.sum(dens) * self.grid.dx)

    def normalized(self) -> "TransverseState":
        n = np.sqrt(self.norm_sq())
        return TransverseState(self.grid, self.amp_h / n, self.amp_v / n,
                               self.sharp_edges)

    def momentum_amplitudes(self) -> tuple[np.ndarray, np.ndarray]:
        """(H, V) momentum-space amplitudes via the unitary transform."""
        return (self.grid.to_momentum(self.amp_h),
                self.grid.to_momentum(self.amp_v))

    def spatial_density(self) -> np.ndarray:
        return np.abs(self.amp_h) ** 2 + np.abs(self.amp_v) ** 2


def _slit_amplitude(geom: SlitGeometry, grid: SimGrid, center: float) -> np.ndarray:
    """Unnormalised aperture transmission for one slit centred at `center`."""
    x = grid.x
    lo = center - geom.width / 2.0
    hi = center + geom.width / 2.0
    if hi > x[-1] - EDGE_MARGIN * grid.dx or lo < x[0] + EDGE_MARGIN * grid.dx:
        raise GeometryError(
            f"slit [{lo}, {hi}] needs {EDGE_MARGIN} samples of margin inside "
            f"the grid extent [{x[0]}, {x[-1]}]"
        )
    if geom.sharp:
        amp = ((x > lo) & (x < hi)).astype(float)
        # A field sample exactly on a discontinuity takes the midpoint value.
        amp[np.isclose(x, lo, rtol=0.0, atol=1e-12 * grid.dx)] = 0.5
        amp[np.isclose(x, hi, rtol=0.0, atol=1e-12 * grid.dx)] = 0.5
        return amp
    scale = geom.edge_scale * np.sqrt(2.0)
    return 0.5 * (erf((x - lo) / scale) - erf((x - hi) / scale))


def build_double_slit(geom: SlitGeometry, grid: SimGrid,
                      weights: tuple[float, float] = (1.0, 1.0)) -> TransverseState:
    """Normalised double-slit state, slits centred at -s/2 and +s/2.

    Parameters
    ----------
    geom, grid :
        Aperture description and sample grid.
    weights :
        Relative (real) illumination amplitudes of the left and right
        slit.  The default models uniform plane-wave illumination at
        normal incidence: equal amplitude, zero relative phase.
    """
    half = geom.separation / 2.0
    amp = (weights[0] * _slit_amplitude(geom, grid, -half)
           + weights[1] * _slit_amplitude(geom, grid, +half))
    state = TransverseState(grid, amp.astype(complex),
                            np.zeros(grid.n_points, dtype=complex),
                            sharp_edges=geom.sharp)
    return state.normalized()


def build_single_slit(geom: SlitGeometry, grid: SimGrid,
                      which: str = "left") -> TransverseState:
    """Normalised single-slit state at -s/2 ("left") or +s/2 ("right")."""
    if which not in ("left", "right"):
        raise GeometryError(f"which must be 'left' or 'right', got {which!r}")
    center = -geom.separation / 2.0 if which == "left" else geom.separation / 2.0
    amp = _slit_amplitude(geom, grid, center)
    state = TransverseState(grid, amp.astype(complex),
                            np.zeros(grid.n_points, dtype=complex),
                            sharp_edges=geom.sharp)
    return state.normalized()


def build_momentum_peak(p0: float, width: float, grid: SimGrid) -> TransverseState:
    """Near-momentum-eigenstate: Gaussian momentum amplitude at p0.

    The amplitude is exp(-(p - p0)^2 / (2 width^2)), so the momentum
    *density* has standard deviation width/sqrt(2).  Widths below 4 grid
    bins are refused as unresolvable.
    """
    if width < 4.0 * grid.dp:
        raise ResolutionError(
            f"momentum width {width} below 4 grid bins ({4.0 * grid.dp:.4g})"
        )
    tilde = np.exp(-((grid.p - p0) ** 2) / (2.0 * width ** 2)).astype(complex)
    amp = grid.from_momentum(tilde)
    state = TransverseState(grid, amp, np.zeros(grid.n_points, dtype=complex),
                            sharp_edges=False)
    return state.normalized()
