"""Synthetic toolkit: edge projections, chart recovery, von Staudt product
and inverse on a line, and the meet-point whose local parameter is a bracket
ratio.  Every step can be recorded into a replayable ConstructionTrace.

All constructions use only lines through two known points, planes through
three known points, and their intersections; intersections of coplanar
lines are realized as meet(l1, join(l2, w)) for a deterministic witness w
off their common plane.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .extensors import (
    Extensor,
    as_point,
    contains_point,
    from_point,
    join,
    join_points,
    line_through,
    meet,
    plane_through,
    scalar_of,
)
from .projective import (
    E0,
    E1,
    E2,
    E3,
    INFINITY,
    GeometryError,
    ONES,
    Point,
    coordinates_in_basis,
    cross_ratio,
    default_witnesses,
    param_mul,
    rank_of_points,
)


class OnOppositeEdge(GeometryError):
    """Projection undefined: the point lies on the opposite edge."""


class OutsideChart(GeometryError):
    """A projection coincides with the chart's infinity vertex."""


class InconsistentProjections(GeometryError):
    """The three recovery planes do not meet in a single point."""


class DegenerateMeet(GeometryError):
    """The line lies inside the plane; their meet vanishes."""


# ---------------------------------------------------------------------------
# construction traces


@dataclass
class TraceStep:
    step_id: int
    op: str
    inputs: list
    output: object  # Point or Extensor


@dataclass
class ConstructionTrace:
    """Ordered, serializable record of construction steps.

    Inputs are either ids of earlier steps or literal points/extensors;
    replaying the steps reproduces every output exactly.
    """

    steps: list = field(default_factory=list)

    def add(self, op, inputs, output) -> int:
        step_id = len(self.steps)
        self.steps.append(TraceStep(step_id, op, list(inputs), output))
        return step_id

    def to_json(self):
        return {"steps": [_step_to_json(s) for s in self.steps]}

    @classmethod
    def from_json(cls, data):
        trace = cls()
        for raw in data["steps"]:
            step = _step_from_json(raw)
            if step.step_id != len(trace.steps):
                raise ValueError("trace step ids must be consecutive")
            trace.steps.append(step)
        return trace


def _value_to_json(value):
    if isinstance(value, Point):
        return {"point": value.to_strings()}
    return {"extensor": value.to_json()}


def _value_from_json(data):
    if "point" in data:
        return Point.from_strings(data["point"])
    return Extensor.from_json(data["extensor"])


def _step_to_json(step: TraceStep):
    inputs = []
    for item in step.inputs:
        if isinstance(item, int):
            inputs.append({"ref": item})
        else:
            inputs.append(_value_to_json(item))
    return {
        "id": step.step_id,
        "op": step.op,
        "inputs": inputs,
        "output": _value_to_json(step.output),
    }


def _step_from_json(raw):
    inputs = []
    for item in raw["inputs"]:
        if "ref" in item:
            inputs.append(int(item["ref"]))
        else:
            inputs.append(_value_from_json(item))
    return TraceStep(int(raw["id"]), raw["op"], inputs, _value_from_json(raw["output"]))


def _record(trace, op, inputs, output):
    if trace is None:
        return None
    return trace.add(op, inputs, output)


def _tok(token, value):
    return token if token is not None else value


# ---------------------------------------------------------------------------
# coplanar line intersection


def _as_extensor(value):
    return from_point(value) if isinstance(value, Point) else value


def line_meet_line(l1: Extensor, l2: Extensor, trace=None) -> Point:
    """Intersection point of two distinct coplanar lines in P^3.

    The meet of coplanar lines degenerates (their supports do not span), so
    the point is computed as meet(l1, join(l2, w)) for the first witness w
    off the common plane.
    """
    if l1.grade != 2 or l2.grade != 2:
        raise ValueError("line_meet_line needs two lines")
    if l1.canonical() == l2.canonical():
        raise ValueError("the lines coincide")
    if scalar_of(join(l1, l2)) != 0:
        raise ValueError("the lines are skew; they do not meet")
    for w in (E0, E1, E2, E3):
        # hit is nonzero exactly when w is off the common plane
        hit = meet(l1, join(l2, from_point(w)))
        if not hit.is_zero():
            point = as_point(hit)
            _record(trace, "meet", [l1, l2], point)
            return point
    raise GeometryError("no standard basis witness off the common plane")


# ---------------------------------------------------------------------------
# frames, tetrahedra, charts


@dataclass(frozen=True)
class LineFrame:
    """Zero, infinity and unit on a line; fixes local parameters on it."""

    zero: Point
    infinity: Point
    unit: Point

    def __post_init__(self):
        pts = (self.zero, self.infinity, self.unit)
        if len(set(pts)) != 3:
            raise ValueError("frame points must be pairwise distinct")
        if rank_of_points(pts) > 2:
            raise ValueError("frame points must be collinear")

    def line(self) -> Extensor:
        return line_through(self.zero, self.infinity)


def parameter_of(frame: LineFrame, p: Point):
    """Local parameter of p: the cross ratio (infinity, zero; unit, p)."""
    wits = default_witnesses([frame.zero, frame.infinity]) if p.dim == 4 else ()
    if p.dim == 3:
        wits = wits[:1]
    return cross_ratio(frame.infinity, frame.zero, frame.unit, p, wits)


def point_at_parameter(frame: LineFrame, x) -> Point:
    """The point of the frame's line with local parameter x."""
    if x is INFINITY:
        return frame.infinity
    alpha, beta = coordinates_in_basis([frame.zero, frame.infinity], frame.unit)
    x = Fraction(x)
    coords = tuple(
        alpha * z + x * beta * i
        for z, i in zip(frame.zero.coords, frame.infinity.coords)
    )
    return Point(coords)


@dataclass(frozen=True)
class Tetrahedron:
    """Four points in general position plus a unit off every face plane."""

    vertices: tuple
    unit: Point

    def __post_init__(self):
        vertices = tuple(self.vertices)
        object.__setattr__(self, "vertices", vertices)
        if len(vertices) != 4 or rank_of_points(vertices) != 4:
            raise ValueError("vertices must be four points in general position")
        for skip in range(4):
            face = [v for i, v in enumerate(vertices) if i != skip]
            if join_points(*face, self.unit).is_zero():
                raise ValueError(f"unit lies on the face missing vertex {skip}")

    @classmethod
    def standard(cls):
        return cls((E0, E1, E2, E3), ONES)

    def edge_frame(self, i: int, j: int) -> LineFrame:
        """Frame on edge ij: zero at vertex i, infinity at vertex j, unit cut
        out by the plane through the other two vertices and the unit."""
        k, l = (m for m in range(4) if m not in (i, j))
        edge = line_through(self.vertices[i], self.vertices[j])
        plane = plane_through(self.vertices[k], self.vertices[l], self.unit)
        unit_ij = as_point(meet(edge, plane))
        return LineFrame(self.vertices[i], self.vertices[j], unit_ij)


def project_to_edge(tet: Tetrahedron, i: int, j: int, p: Point, trace=None) -> Point:
    """Project p onto edge ij from the opposite edge: edge ∩ plane(k, l, p)."""
    if i == j:
        raise ValueError("edge needs two distinct vertex indices")
    k, l = (m for m in range(4) if m not in (i, j))
    vi, vj, vk, vl = (tet.vertices[m] for m in (i, j, k, l))
    opposite = line_through(vk, vl)
    if contains_point(opposite, p):
        raise OnOppositeEdge(f"{p} lies on the opposite edge {k}{l}")
    result = as_point(meet(line_through(vi, vj), plane_through(vk, vl, p)))
    _record(trace, "projection", [vi, vj, vk, vl, p], result)
    return result


def recover_from_chart(tet: Tetrahedron, i: int, projections, trace=None) -> Point:
    """Recover a chart-U_i point from its three edge projections.

    projections are the points on the edges i-j for the three other vertex
    indices j in ascending order; each must lie on its edge and differ from
    the infinity vertex j.  The point is the meet of the three planes
    spanned by each projection and its opposite edge.
    """
    others = [j for j in range(4) if j != i]
    projections = list(projections)
    if len(projections) != 3:
        raise ValueError("need one projection per edge through the chart vertex")
    planes = []
    tokens = []
    for j, proj in zip(others, projections):
        edge = line_through(tet.vertices[i], tet.vertices[j])
        if not contains_point(edge, proj):
            raise InconsistentProjections(f"{proj} is not on edge {i}{j}")
        if proj == tet.vertices[j]:
            raise OutsideChart(f"projection on edge {i}{j} is the infinity vertex")
        k, l = (m for m in range(4) if m not in (i, j))
        plane = plane_through(proj, tet.vertices[k], tet.vertices[l])
        tokens.append(_record(trace, "join", [proj, tet.vertices[k], tet.vertices[l]], plane))
        planes.append(plane)
    cut = meet(planes[0], planes[1])
    hit = meet(cut, planes[2])
    if hit.is_zero():
        raise InconsistentProjections("recovery planes do not meet in one point")
    result = as_point(hit)
    _record(
        trace,
        "recover",
        [_tok(t, pl) for t, pl in zip(tokens, planes)],
        result,
    )
    for j, proj in zip(others, projections):
        if project_to_edge(tet, i, j, result) != proj:
            raise InconsistentProjections("recovered point does not reproject")
    return result


# ---------------------------------------------------------------------------
# auxiliary choices for the product construction


def choose_auxiliaries(frame: LineFrame, avoid=()):
    """Deterministic auxiliary point a and line L' for the two-projection
    construction: a off the frame's line and off L', L' through zero and
    distinct from the line.  Candidates walk a fixed rational family; avoid
    points are kept off L' (zero excepted) and distinct from a.
    """
    avoid = tuple(avoid)
    line = frame.line()
    udir = next(
        e for e in (E0, E1, E2, E3)
        if rank_of_points((frame.zero, frame.infinity, e)) == 3
    )
    for t in range(1, len(avoid) + 3):
        q = Point(
            tuple(
                iv + t * uv
                for iv, uv in zip(frame.infinity.coords, udir.coords)
            )
        )
        lprime = line_through(frame.zero, q)
        if any(contains_point(lprime, av) and av != frame.zero for av in avoid):
            continue
        for s in range(1, len(avoid) + 4):
            a = Point(
                tuple(
                    zv + s * iv + uv
                    for zv, iv, uv in zip(
                        frame.zero.coords, frame.infinity.coords, udir.coords
                    )
                )
            )
            if contains_point(line, a) or contains_point(lprime, a) or a in avoid:
                continue
            return a, lprime
    raise GeometryError("auxiliary enumeration exhausted")  # unreachable


# ---------------------------------------------------------------------------
# von Staudt arithmetic on a line


def _require_on_line(frame: LineFrame, p: Point):
    if not contains_point(frame.line(), p):
        raise ValueError(f"{p} is not on the frame's line")


def von_staudt_product(frame: LineFrame, px: Point, py: Point, trace=None, avoid=()) -> Point:
    """Point with local parameter x*y, by the two-projection construction.

    The line is projected from an auxiliary point a onto an auxiliary line
    L' through zero, then back from the pivot b = (p1' px) ∩ (a infinity);
    the composite fixes zero and infinity and sends the unit to px, hence
    py to the product point.  Parameters 0 and infinity degenerate the
    figure, so those products are returned directly as the analytically
    forced point (0 * infinity raises InfinityProduct).
    """
    _require_on_line(frame, px)
    _require_on_line(frame, py)
    x = parameter_of(frame, px)
    y = parameter_of(frame, py)
    degenerate = {Fraction(0), INFINITY}
    if x in degenerate or y in degenerate:
        result = point_at_parameter(frame, param_mul(x, y))
        _record(
            trace,
            "degenerate-product",
            [frame.zero, frame.infinity, frame.unit, px, py],
            result,
        )
        return result
    a, lprime = choose_auxiliaries(frame, avoid)
    line = frame.line()

    la1 = line_through(a, frame.unit)
    t_la1 = _record(trace, "join", [a, frame.unit], la1)
    p1p = line_meet_line(la1, lprime)
    t_p1p = _record(trace, "meet", [_tok(t_la1, la1), lprime], p1p)

    lay = line_through(a, py)
    t_lay = _record(trace, "join", [a, py], lay)
    pyp = line_meet_line(lay, lprime)
    t_pyp = _record(trace, "meet", [_tok(t_lay, lay), lprime], pyp)

    lx = line_through(p1p, px)
    t_lx = _record(trace, "join", [_tok(t_p1p, p1p), px], lx)
    linf = line_through(a, frame.infinity)
    t_linf = _record(trace, "join", [a, frame.infinity], linf)
    b = line_meet_line(lx, linf)
    t_b = _record(trace, "meet", [_tok(t_lx, lx), _tok(t_linf, linf)], b)

    lback = line_through(b, pyp)
    t_lback = _record(trace, "join", [_tok(t_b, b), _tok(t_pyp, pyp)], lback)
    result = line_meet_line(lback, line)
    _record(trace, "meet", [_tok(t_lback, lback), line], result)
    _record(trace, "product", [frame.zero, frame.infinity, frame.unit, px, py], result)
    return result


def von_staudt_inverse(frame: LineFrame, px: Point, trace=None, avoid=()) -> Point:
    """Point with local parameter 1/x; total on the line.

    Reverses the product construction: with b off L and L', the line from
    (px b ∩ L') through the unit meets (infinity b) at a, and (unit b ∩ L')
    joined to a cuts the line at the inverse point.  Sends zero to infinity
    and infinity to zero.
    """
    _require_on_line(frame, px)
    b, lprime = choose_auxiliaries(frame, avoid)
    line = frame.line()

    lxb = line_through(px, b)
    t_lxb = _record(trace, "join", [px, b], lxb)
    c1 = line_meet_line(lxb, lprime)
    t_c1 = _record(trace, "meet", [_tok(t_lxb, lxb), lprime], c1)

    l_c11 = line_through(c1, frame.unit)
    t_l_c11 = _record(trace, "join", [_tok(t_c1, c1), frame.unit], l_c11)
    linfb = line_through(frame.infinity, b)
    t_linfb = _record(trace, "join", [frame.infinity, b], linfb)
    a = line_meet_line(l_c11, linfb)
    t_a = _record(trace, "meet", [_tok(t_l_c11, l_c11), _tok(t_linfb, linfb)], a)

    l1b = line_through(frame.unit, b)
    t_l1b = _record(trace, "join", [frame.unit, b], l1b)
    c2 = line_meet_line(l1b, lprime)
    t_c2 = _record(trace, "meet", [_tok(t_l1b, l1b), lprime], c2)

    lfinal = line_through(c2, a)
    t_lfinal = _record(trace, "join", [_tok(t_c2, c2), _tok(t_a, a)], lfinal)
    result = line_meet_line(lfinal, line)
    _record(trace, "meet", [_tok(t_lfinal, lfinal), line], result)
    _record(trace, "inverse", [frame.zero, frame.infinity, frame.unit, px], result)
    return result


def local_param_point(d: Point, e: Point, a: Point, b: Point, c: Point, trace=None) -> Point:
    """meet(de, abc) = [abce]d - [abcd]e.

    With the frame (zero=d, infinity=e, unit=<d+e>) the local parameter of
    the point is -[abcd]/[abce]; in particular it is d itself when d lies
    on the plane and e when e does.
    """
    line = line_through(d, e)
    t_line = _record(trace, "join", [d, e], line)
    plane = plane_through(a, b, c)
    t_plane = _record(trace, "join", [a, b, c], plane)
    hit = meet(line, plane)
    if hit.is_zero():
        raise DegenerateMeet(f"line {d}{e} lies in the plane")
    result = as_point(hit)
    _record(trace, "meet", [_tok(t_line, line), _tok(t_plane, plane)], result)
    return result


# ---------------------------------------------------------------------------
# trace replay


def _execute_step(op, inputs):
    if op == "join":
        exts = [_as_extensor(v) for v in inputs]
        out = exts[0]
        for e in exts[1:]:
            out = join(out, e)
        return out
    if op == "meet":
        a, b = (_as_extensor(v) for v in inputs)
        if a.grade == 2 and b.grade == 2 and scalar_of(join(a, b)) == 0:
            return line_meet_line(a, b)
        hit = meet(a, b)
        return as_point(hit) if hit.grade == 1 and not hit.is_zero() else hit
    if op == "projection":
        vi, vj, vk, vl, p = inputs
        return as_point(meet(line_through(vi, vj), plane_through(vk, vl, p)))
    if op == "recover":
        planes = [_as_extensor(v) for v in inputs]
        return as_point(meet(meet(planes[0], planes[1]), planes[2]))
    if op == "product":
        z, i, u, px, py = inputs
        return von_staudt_product(LineFrame(z, i, u), px, py)
    if op == "degenerate-product":
        z, i, u, px, py = inputs
        frame = LineFrame(z, i, u)
        return point_at_parameter(
            frame, param_mul(parameter_of(frame, px), parameter_of(frame, py))
        )
    if op == "inverse":
        z, i, u, px = inputs
        return von_staudt_inverse(LineFrame(z, i, u), px)
    raise ValueError(f"unknown trace op {op!r}")


def replay_trace(trace: ConstructionTrace):
    """Re-execute every step; returns the list of recomputed outputs."""
    outputs = {}
    results = []
    for step in trace.steps:
        resolved = [outputs[v] if isinstance(v, int) else v for v in step.inputs]
        value = _execute_step(step.op, resolved)
        outputs[step.step_id] = value
        results.append(value)
    return results


def verify_replay(trace: ConstructionTrace) -> bool:
    """True when replaying reproduces every recorded output exactly."""
    return all(
        got == step.output for got, step in zip(replay_trace(trace), trace.steps)
    )
