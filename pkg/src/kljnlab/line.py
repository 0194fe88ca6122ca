"""Distributed RC/LC ladder model of the battery/switch exchanger's wire.

The wire is an n-segment ladder: each segment carries series resistance and
inductance followed by shunt capacitance to ground (end nodes get half a
segment's capacitance each).  Ends terminate in an ideal battery, a battery
behind a damping resistor, a ground short, or an open circuit; the damping
resistor carries its own Johnson noise, and a resistive wire can carry one
Thevenin noise source per segment.

Integration is trapezoidal: A-stable, and for this linear network the
discrete stored-energy / dissipation / source-work ledger balances to
rounding error, which is what the "transients never decay on a lossless
line" demonstrations lean on.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import linalg


class TerminationKind(Enum):
    OPEN = "open"
    GROUNDED = "grounded"
    BATTERY = "battery"
    BATTERY_DAMPED = "battery_damped"


@dataclass(frozen=True)
class Termination:
    kind: TerminationKind
    u0: float = 0.0
    r_damp: float = 0.0

    def __post_init__(self):
        if self.kind is TerminationKind.BATTERY_DAMPED and self.r_damp <= 0:
            raise ValueError("damped termination needs r_damp > 0")

    @classmethod
    def open(cls) -> "Termination":
        return cls(TerminationKind.OPEN)

    @classmethod
    def grounded(cls) -> "Termination":
        return cls(TerminationKind.GROUNDED)

    @classmethod
    def battery(cls, u0: float) -> "Termination":
        return cls(TerminationKind.BATTERY, u0=u0)

    @classmethod
    def battery_damped(cls, u0: float, r_damp: float) -> "Termination":
        return cls(TerminationKind.BATTERY_DAMPED, u0=u0, r_damp=r_damp)

    @property
    def clamped(self) -> bool:
        return self.kind in (TerminationKind.BATTERY, TerminationKind.GROUNDED)


@dataclass(frozen=True)
class LineModel:
    """Ladder discretization of the wire plus its two end terminations."""

    n_segments: int
    series_r: float
    series_l: float
    shunt_c: float
    term_a: Termination
    term_b: Termination
    damping_temperature: float = 0.0

    def __post_init__(self):
        if self.n_segments < 8:
            raise ValueError("need at least 8 segments")
        if min(self.series_r, self.series_l, self.shunt_c) < 0:
            raise ValueError("element values must be >= 0")
        if self.shunt_c == 0:
            raise ValueError("shunt capacitance must be positive")
        if self.series_r == 0 and self.series_l == 0:
            raise ValueError("need series resistance or inductance")
        if self.damping_temperature < 0:
            raise ValueError("damping temperature must be >= 0")

    @property
    def n_nodes(self) -> int:
        return self.n_segments + 1

    @property
    def wave_impedance(self) -> float:
        if self.series_l <= 0:
            raise ValueError("wave impedance undefined for an RC line")
        return float(np.sqrt(self.series_l / self.shunt_c))

    @property
    def round_trip_time(self) -> float:
        """Two transits of the ladder at the low-frequency wave velocity."""
        if self.series_l <= 0:
            raise ValueError("round trip undefined for an RC line")
        return 2.0 * self.n_segments * float(
            np.sqrt(self.series_l * self.shunt_c)
        )

    def node_capacitances(self) -> np.ndarray:
        c = np.full(self.n_nodes, self.shunt_c)
        c[0] = c[-1] = self.shunt_c / 2.0
        return c


@dataclass
class LineState:
    """Node voltages (n+1), branch currents (n) and the current time."""

    node_voltages: np.ndarray
    branch_currents: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.node_voltages = np.asarray(self.node_voltages, dtype=float)
        self.branch_currents = np.asarray(self.branch_currents, dtype=float)
        if self.node_voltages.shape[0] != self.branch_currents.shape[0] + 1:
            raise ValueError("need one more node voltage than branch current")
        if not (
            np.all(np.isfinite(self.node_voltages))
            and np.all(np.isfinite(self.branch_currents))
        ):
            raise ValueError("state must be finite")

    @classmethod
    def zero(cls, model: LineModel) -> "LineState":
        return cls(np.zeros(model.n_nodes), np.zeros(model.n_segments))


def default_dt(model: LineModel) -> float:
    """Recommended step: a tenth of the fastest element time scale."""
    candidates = []
    if model.series_l > 0:
        candidates.append(np.sqrt(model.series_l * model.shunt_c))
    if model.series_r > 0:
        candidates.append(model.series_r * model.shunt_c)
    return 0.1 * min(candidates)


def max_accurate_dt(model: LineModel) -> float:
    """Accuracy guard for the (unconditionally stable) trapezoidal rule.

    Beyond one element time constant per step the discrete solution, while
    bounded, no longer resolves the ladder dynamics, so the stepper refuses.
    """
    return 10.0 * default_dt(model)


@dataclass
class LineRecording:
    """Spatially resolved history: (n_rec, nodes[, batch]) samples."""

    voltages: np.ndarray
    currents: np.ndarray
    dt: float

    @property
    def n_records(self) -> int:
        return self.voltages.shape[0]

    def states(self) -> list[LineState]:
        v = self.voltages
        c = self.currents
        if v.ndim == 3:
            if v.shape[2] != 1:
                raise ValueError("states() needs a single-period recording")
            v = v[:, :, 0]
            c = c[:, :, 0]
        return [
            LineState(v[k], c[k], k * self.dt) for k in range(self.n_records)
        ]


class LineSimulator:
    """Precompiled trapezoidal stepper for one termination configuration.

    States may be batched: `x` of shape (dim,) or (dim, batch) steps under
    the same factorized operator, which is how whole attack campaigns run in
    one pass.  Inputs are the two port source voltages (battery command plus
    any damping-resistor noise) and, with branch_noise=True, one Thevenin
    noise voltage per segment.
    """

    def __init__(self, model: LineModel, dt: float, branch_noise: bool = False):
        if dt <= 0:
            raise ValueError("dt must be positive")
        if dt > max_accurate_dt(model):
            raise ValueError(
                f"dt={dt:g} exceeds the integrator accuracy bound "
                f"{max_accurate_dt(model):g}"
            )
        self.model = model
        self.dt = dt
        self.branch_noise = branch_noise
        self.n_inputs = 2 + (model.n_segments if branch_noise else 0)
        self._assemble()

    def _assemble(self):
        m = self.model
        n = m.n_segments
        caps = m.node_capacitances()
        terms = {0: m.term_a, n: m.term_b}
        self.clamped_nodes = [i for i, t in terms.items() if t.clamped]
        dynamic = [i for i in range(m.n_nodes) if i not in self.clamped_nodes]
        self.dynamic_nodes = dynamic
        col_of_node = {node: k for k, node in enumerate(dynamic)}
        nd = len(dynamic)
        dim = nd + n
        mass = np.zeros(dim)
        mass[:nd] = caps[dynamic]
        mass[nd:] = m.series_l
        a = np.zeros((dim, dim))
        b = np.zeros((dim, self.n_inputs))
        port_index = {0: 0, n: 1}

        # node equations: C dV/dt = branch currents in, plus any damped port
        for node, k in col_of_node.items():
            if node > 0:
                a[k, nd + node - 1] += 1.0
            if node < n:
                a[k, nd + node] -= 1.0
            term = terms.get(node)
            if term is not None and term.kind is TerminationKind.BATTERY_DAMPED:
                a[k, k] -= 1.0 / term.r_damp
                b[k, port_index[node]] += 1.0 / term.r_damp

        # branch equations: L dI/dt = V_left - V_right - R I (+ noise source)
        for j in range(n):
            row = nd + j
            for node, sign in ((j, 1.0), (j + 1, -1.0)):
                if node in col_of_node:
                    a[row, col_of_node[node]] += sign
                else:
                    term = terms[node]
                    if term.kind is TerminationKind.BATTERY:
                        b[row, port_index[node]] += sign
                    # grounded ends clamp to zero: no input coupling
            a[row, nd + j] -= m.series_r
            if self.branch_noise:
                b[row, 2 + j] = 1.0

        self.n_dynamic = nd
        self._a = a
        self._b = b
        self._mass = mass
        left = np.diag(mass) - (self.dt / 2.0) * a
        self._right = np.diag(mass) + (self.dt / 2.0) * a
        self._gain = (self.dt / 2.0) * b
        self._lu = linalg.lu_factor(left)

    # -- state packing ------------------------------------------------------

    def pack(self, state: LineState) -> np.ndarray:
        x = np.empty(self.n_dynamic + self.model.n_segments)
        x[: self.n_dynamic] = state.node_voltages[self.dynamic_nodes]
        x[self.n_dynamic:] = state.branch_currents
        return x

    def pack_arrays(
        self, node_voltages: np.ndarray, branch_currents: np.ndarray
    ) -> np.ndarray:
        x = np.empty(
            (self.n_dynamic + self.model.n_segments,) + node_voltages.shape[1:]
        )
        x[: self.n_dynamic] = node_voltages[self.dynamic_nodes]
        x[self.n_dynamic:] = branch_currents
        return x

    def node_voltage_matrix(self, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        """All node voltages for (dim[, batch]) state and matching inputs."""
        u = np.asarray(u, dtype=float)
        v = np.zeros((self.model.n_nodes,) + x.shape[1:])
        v[self.dynamic_nodes] = x[: self.n_dynamic]
        for node in self.clamped_nodes:
            term = self.model.term_a if node == 0 else self.model.term_b
            if term.kind is TerminationKind.BATTERY:
                v[node] = u[0 if node == 0 else 1]
        return v

    def unpack(self, x: np.ndarray, u: np.ndarray, time: float) -> LineState:
        v = self.node_voltage_matrix(x, u)
        return LineState(v, np.array(x[self.n_dynamic:]), time)

    # -- stepping -------------------------------------------------------------

    def step(self, x: np.ndarray, u_now: np.ndarray, u_next: np.ndarray) -> np.ndarray:
        rhs = self._right @ x + self._gain @ (
            np.asarray(u_now, dtype=float) + np.asarray(u_next, dtype=float)
        )
        return linalg.lu_solve(self._lu, rhs)

    def run(
        self,
        x: np.ndarray,
        u_seq: np.ndarray,
        record_every: int = 0,
        audit: "EnergyAudit | None" = None,
    ) -> tuple[np.ndarray, "LineRecording | None"]:
        """Advance through u_seq.shape[0] - 1 steps.

        u_seq carries the input samples at the step boundaries, shaped
        (n_steps + 1, n_inputs[, batch]).  With record_every = k > 0 a
        LineRecording holding every k-th state (plus the initial one) comes
        back alongside the final state.
        """
        if u_seq.shape[1] != self.n_inputs:
            raise ValueError(
                f"expected {self.n_inputs} input channels, got {u_seq.shape[1]}"
            )
        n_steps = u_seq.shape[0] - 1
        recording = None
        if record_every > 0:
            n_rec = n_steps // record_every + 1
            recording = LineRecording(
                voltages=np.empty(
                    (n_rec, self.model.n_nodes) + x.shape[1:]
                ),
                currents=np.empty(
                    (n_rec, self.model.n_segments) + x.shape[1:]
                ),
                dt=self.dt * record_every,
            )
            recording.voltages[0] = self.node_voltage_matrix(x, u_seq[0])
            recording.currents[0] = x[self.n_dynamic:]
        idx = 1
        for k in range(n_steps):
            x_next = self.step(x, u_seq[k], u_seq[k + 1])
            if audit is not None:
                audit.accumulate(self, x, x_next, u_seq[k], u_seq[k + 1])
            x = x_next
            if record_every > 0 and (k + 1) % record_every == 0:
                recording.voltages[idx] = self.node_voltage_matrix(
                    x, u_seq[k + 1]
                )
                recording.currents[idx] = x[self.n_dynamic:]
                idx += 1
        return x, recording

    # -- energetics -------------------------------------------------------------

    def stored_energy(self, x: np.ndarray) -> np.ndarray:
        """Capacitive plus inductive energy of the dynamic state.

        Capacitors sitting directly across a clamped source belong to the
        source and are excluded.
        """
        xs = x.reshape(len(self._mass), -1)
        e = 0.5 * (self._mass @ xs**2)
        return e.reshape(x.shape[1:])


class EnergyAudit:
    """Trapezoid-consistent ledger of stored, dissipated and source energy.

    The discrete balance stored + dissipated - injected is exact to rounding
    for this linear network, so drift in it flags integrator misuse while
    the physics lives in how the stored term alone evolves.
    """

    def __init__(self, sim: LineSimulator, x0: np.ndarray):
        self.initial = sim.stored_energy(x0)
        self.dissipated = np.zeros(x0.shape[1:])
        self.injected = np.zeros(x0.shape[1:])

    def accumulate(self, sim: LineSimulator, x0, x1, u0, u1):
        m = sim.model
        nd = sim.n_dynamic
        xm = 0.5 * (x0 + x1)
        um = 0.5 * (np.asarray(u0, dtype=float) + np.asarray(u1, dtype=float))
        if um.ndim < xm.ndim:
            um = um.reshape(um.shape + (1,) * (xm.ndim - um.ndim))
        currents = xm[nd:]
        self.dissipated += m.series_r * np.sum(currents**2, axis=0) * sim.dt
        if sim.branch_noise:
            self.injected += np.sum(um[2:] * currents, axis=0) * sim.dt
        col_of_node = {node: k for k, node in enumerate(sim.dynamic_nodes)}
        for node, term in ((0, m.term_a), (m.n_segments, m.term_b)):
            port = 0 if node == 0 else 1
            if term.kind is TerminationKind.BATTERY_DAMPED:
                v_node = xm[col_of_node[node]]
                i_port = (um[port] - v_node) / term.r_damp
                self.injected += um[port] * i_port * sim.dt
                self.dissipated += i_port**2 * term.r_damp * sim.dt
            elif term.kind is TerminationKind.BATTERY:
                # source current equals the branch current leaving the node
                i_out = xm[nd] if node == 0 else -xm[nd + m.n_segments - 1]
                self.injected += um[port] * i_out * sim.dt

    def balance_error(self, sim: LineSimulator, x: np.ndarray) -> np.ndarray:
        """stored(now) - stored(start) + dissipated - injected; ~0 always."""
        return sim.stored_energy(x) - self.initial + self.dissipated - self.injected


def step_line(
    model: LineModel,
    state: LineState,
    drive: tuple[tuple[float, float], tuple[float, float]],
    dt: float,
) -> LineState:
    """One trapezoidal step.  drive gives each port's source voltage at the
    start and the end of the step: ((ua_now, ua_next), (ub_now, ub_next))."""
    sim = LineSimulator(model, dt)
    (ua0, ua1), (ub0, ub1) = drive
    x = sim.step(sim.pack(state), np.array([ua0, ub0]), np.array([ua1, ub1]))
    return sim.unpack(x, np.array([ua1, ub1]), state.time + dt)


def raised_cosine_ramp(
    t: np.ndarray, t_start: float, t_ramp: float, v_from: float, v_to: float
) -> np.ndarray:
    """Smooth monotone ramp; constant outside [t_start, t_start + t_ramp].

    The raised-cosine envelope keeps the drive's spectral content far below
    the wire's lowest wave mode, which is what lets the battery scheme charge
    the line without launching wave transients.
    """
    if t_ramp <= 0:
        raise ValueError("t_ramp must be positive")
    phase = np.clip((np.asarray(t, dtype=float) - t_start) / t_ramp, 0.0, 1.0)
    return v_from + (v_to - v_from) * 0.5 * (1.0 - np.cos(np.pi * phase))
