"""Exact mixed-integer linear encoding of density maximization.

For a fixed community count m the nonlinear objective sum_l d_l is made
linear in three steps:

* binaries ``x_i_l`` select the community of each vertex;
* each edge product x_il*x_jl becomes a continuous ``w_i_j_l`` in [0, 1]
  tied down by the three Fortet inequalities (binary arguments make the
  relaxation exact);
* one continuous ``a_l`` carries the density of community l, linked through
  ``y_i_l`` = a_l*x_il via the four McCormick inequalities (exact because
  x_il is binary), so that 4*sum_w w - sum_i k_i x = sum_i y = a_l * n_l.

The objective is then simply sum_l a_l. McCormick needs finite bounds on
a_l: without the weak constraint the lower bound is -(k1+k2)/2 for the two
largest degrees, with it the bound improves to L itself; n-1 always bounds
a community's density from above.

``emit_lp`` serializes the model in CPLEX LP format, byte-identically for a
given model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InfeasiblePartition, InputError
from .graph import Graph, Partition
from .metrics import modularity_density, _counts

__all__ = [
    "Variable",
    "Constraint",
    "LinearModel",
    "AlphaBounds",
    "ModelCheck",
    "alpha_bounds",
    "build_model",
    "induced_solution",
    "evaluate_assignment",
    "emit_lp",
    "variable_metadata",
]

BINARY = "binary"
CONTINUOUS = "continuous"


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str
    lower: Fraction
    upper: Fraction


@dataclass(frozen=True)
class Constraint:
    name: str
    coeffs: tuple[tuple[str, Fraction], ...]
    sense: str  # "<=", ">=", "="
    rhs: Fraction


@dataclass(frozen=True)
class LinearModel:
    variables: tuple[Variable, ...]
    constraints: tuple[Constraint, ...]
    objective_sense: str
    objective: tuple[tuple[str, Fraction], ...]

    def variable(self, name: str) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise InputError(f"unknown variable {name!r}")

    def validate(self) -> None:
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise InputError("duplicate variable names in model")
        declared = set(names)
        for con in self.constraints:
            for name, _ in con.coeffs:
                if name not in declared:
                    raise InputError(f"constraint {con.name} references unknown {name!r}")
        for name, _ in self.objective:
            if name not in declared:
                raise InputError(f"objective references unknown {name!r}")


@dataclass(frozen=True)
class AlphaBounds:
    lower: Fraction
    upper: Fraction


def _x(i: int, l: int) -> str:
    return f"x_{i}_{l}"


def _w(u: int, v: int, l: int) -> str:
    return f"w_{u}_{v}_{l}"


def _a(l: int) -> str:
    return f"a_{l}"


def _y(i: int, l: int) -> str:
    return f"y_{i}_{l}"


def alpha_bounds(g: Graph, weak_L: int | None = None) -> AlphaBounds:
    """Bounds on a community's density variable.

    Unconstrained, a community's average degree can not exceed the mean of
    the two largest degrees (a singleton of the unique top-degree vertex can
    dip below this; such solutions are outside what the encoding admits).
    With the weak constraint at L the numerator 4e-K is at least L, and L
    itself is used as the lower bound.
    """
    if g.n < 2:
        raise InputError("need at least two vertices")
    if weak_L is None:
        top_two = sorted(g.degree, reverse=True)[:2]
        lower = Fraction(-(top_two[0] + top_two[1]), 2)
    elif weak_L in (0, 1):
        lower = Fraction(weak_L)
    else:
        raise InputError(f"weak_L must be 0 or 1, got {weak_L}")
    return AlphaBounds(lower=lower, upper=Fraction(g.n - 1))


def build_model(
    g: Graph,
    m: int,
    weak_L: int | None = None,
    symmetry_break: bool = False,
) -> LinearModel:
    """Assemble the full linear model for exactly m non-empty communities."""
    if not 2 <= m <= g.n - 1:
        raise InputError(f"community count m={m} outside 2..{g.n - 1}")
    bounds = alpha_bounds(g, weak_L)
    lo, up = bounds.lower, bounds.upper
    y_lo, y_up = min(lo, Fraction(0)), max(up, Fraction(0))
    one = Fraction(1)

    variables: list[Variable] = []
    for i in range(1, g.n + 1):
        for l in range(1, m + 1):
            variables.append(Variable(_x(i, l), BINARY, Fraction(0), Fraction(1)))
    for u, v in g.edges:
        for l in range(1, m + 1):
            variables.append(Variable(_w(u, v, l), CONTINUOUS, Fraction(0), Fraction(1)))
    for l in range(1, m + 1):
        variables.append(Variable(_a(l), CONTINUOUS, lo, up))
    for i in range(1, g.n + 1):
        for l in range(1, m + 1):
            variables.append(Variable(_y(i, l), CONTINUOUS, y_lo, y_up))

    cons: list[Constraint] = []
    for i in range(1, g.n + 1):
        cons.append(
            Constraint(
                f"assign_{i}",
                tuple((_x(i, l), one) for l in range(1, m + 1)),
                "=",
                Fraction(1),
            )
        )
    for l in range(1, m + 1):
        column = tuple((_x(i, l), one) for i in range(1, g.n + 1))
        cons.append(Constraint(f"size_min_{l}", column, ">=", Fraction(1)))
        cons.append(Constraint(f"size_max_{l}", column, "<=", Fraction(g.n - 1)))
    for u, v in g.edges:
        for l in range(1, m + 1):
            w = _w(u, v, l)
            cons.append(Constraint(f"f1_{u}_{v}_{l}", ((w, one), (_x(u, l), -one)), "<=", Fraction(0)))
            cons.append(Constraint(f"f2_{u}_{v}_{l}", ((w, one), (_x(v, l), -one)), "<=", Fraction(0)))
            cons.append(
                Constraint(
                    f"f3_{u}_{v}_{l}",
                    ((w, one), (_x(u, l), -one), (_x(v, l), -one)),
                    ">=",
                    Fraction(-1),
                )
            )
    for i in range(1, g.n + 1):
        for l in range(1, m + 1):
            y, x, a = _y(i, l), _x(i, l), _a(l)
            cons.append(Constraint(f"m1_{i}_{l}", ((y, one), (x, -up)), "<=", Fraction(0)))
            cons.append(Constraint(f"m2_{i}_{l}", ((y, one), (x, -lo)), ">=", Fraction(0)))
            cons.append(Constraint(f"m3_{i}_{l}", ((y, one), (a, -one), (x, -lo)), "<=", -lo))
            cons.append(Constraint(f"m4_{i}_{l}", ((y, one), (a, -one), (x, -up)), ">=", -up))
    for l in range(1, m + 1):
        coeffs: list[tuple[str, Fraction]] = []
        coeffs.extend((_w(u, v, l), Fraction(4)) for u, v in g.edges)
        coeffs.extend((_x(i, l), Fraction(-g.deg(i))) for i in range(1, g.n + 1) if g.deg(i))
        coeffs.extend((_y(i, l), -one) for i in range(1, g.n + 1))
        cons.append(Constraint(f"link_{l}", tuple(coeffs), "=", Fraction(0)))
    if weak_L is not None:
        for l in range(1, m + 1):
            coeffs = []
            coeffs.extend((_w(u, v, l), Fraction(4)) for u, v in g.edges)
            coeffs.extend((_x(i, l), Fraction(-g.deg(i))) for i in range(1, g.n + 1) if g.deg(i))
            cons.append(Constraint(f"weak_{l}", tuple(coeffs), ">=", Fraction(weak_L)))
    if symmetry_break:
        for i in range(1, g.n + 1):
            for l in range(i + 1, m + 1):
                cons.append(Constraint(f"sym_{i}_{l}", ((_x(i, l), one),), "=", Fraction(0)))

    model = LinearModel(
        variables=tuple(variables),
        constraints=tuple(cons),
        objective_sense="maximize",
        objective=tuple((_a(l), one) for l in range(1, m + 1)),
    )
    model.validate()
    return model


def _model_m(model: LinearModel) -> int:
    return sum(1 for v in model.variables if v.name.startswith("a_"))


def induced_solution(model: LinearModel, g: Graph, p: Partition) -> dict[str, Fraction]:
    """Variable values that represent the partition `p` inside `model`.

    Products are set to their exact values (w = x*x, y = a*x, a_l = d_l).
    Raises InfeasiblePartition when some community density falls outside the
    model's bounds on a_l, which is how the encoding rejects a partition.
    """
    m = _model_m(model)
    if p.m != m:
        raise InputError(f"partition has {p.m} communities, model expects {m}")
    if len(p.assign) != g.n:
        raise InputError("partition does not match graph")
    a_var = model.variable(_a(1))
    lo, up = a_var.lower, a_var.upper
    densities: list[Fraction] = []
    for size, e, ksum in _counts(g, p):
        d = Fraction(4 * e - ksum, size)
        if not lo <= d <= up:
            raise InfeasiblePartition(
                f"partition infeasible for these bounds: density {d} outside [{lo}, {up}]"
            )
        densities.append(d)
    values: dict[str, Fraction] = {}
    for i in range(1, g.n + 1):
        for l in range(1, m + 1):
            values[_x(i, l)] = Fraction(1 if p.assign[i - 1] == l else 0)
    for u, v in g.edges:
        for l in range(1, m + 1):
            inside = p.assign[u - 1] == l and p.assign[v - 1] == l
            values[_w(u, v, l)] = Fraction(1 if inside else 0)
    for l in range(1, m + 1):
        values[_a(l)] = densities[l - 1]
    for i in range(1, g.n + 1):
        for l in range(1, m + 1):
            values[_y(i, l)] = densities[l - 1] if p.assign[i - 1] == l else Fraction(0)
    return values


@dataclass(frozen=True)
class ModelCheck:
    feasible: bool
    violations: tuple[str, ...]
    objective: Fraction


def evaluate_assignment(model: LinearModel, values: dict[str, Fraction]) -> ModelCheck:
    """Exact feasibility check of `values` against every bound and row."""
    violations: list[str] = []
    for var in model.variables:
        if var.name not in values:
            raise InputError(f"no value for variable {var.name}")
        x = values[var.name]
        if not var.lower <= x <= var.upper:
            violations.append(f"bound:{var.name}")
        if var.kind == BINARY and x not in (0, 1):
            violations.append(f"integrality:{var.name}")
    for con in model.constraints:
        lhs = sum((coef * values[name] for name, coef in con.coeffs), start=Fraction(0))
        ok = lhs <= con.rhs if con.sense == "<=" else lhs >= con.rhs if con.sense == ">=" else lhs == con.rhs
        if not ok:
            violations.append(con.name)
    objective = sum((coef * values[name] for name, coef in model.objective), start=Fraction(0))
    return ModelCheck(feasible=not violations, violations=tuple(violations), objective=objective)


def check_partition_objective(model: LinearModel, g: Graph, p: Partition) -> bool:
    """True when the induced point is feasible and scores exactly D(p)."""
    try:
        values = induced_solution(model, g, p)
    except InfeasiblePartition:
        return False
    check = evaluate_assignment(model, values)
    return check.feasible and check.objective == modularity_density(g, p)


def _coef_str(x: Fraction) -> str:
    """Exact plain-decimal coefficient; only terminating expansions occur."""
    if x.denominator == 1:
        return str(x.numerator)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise InputError(f"coefficient {x} has no finite decimal expansion")
    places = max(twos, fives)
    scaled = x.numerator * 10**places // x.denominator
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    out = f"{sign}{digits[:-places]}.{digits[-places:]}".rstrip("0").rstrip(".")
    return out


def _terms_str(coeffs: tuple[tuple[str, Fraction], ...]) -> str:
    parts: list[str] = []
    for idx, (name, coef) in enumerate(coeffs):
        mag = abs(coef)
        body = name if mag == 1 else f"{_coef_str(mag)} {name}"
        if idx == 0:
            parts.append(body if coef > 0 else f"- {body}")
        else:
            parts.append(f"+ {body}" if coef > 0 else f"- {body}")
    return " ".join(parts)


def emit_lp(model: LinearModel) -> str:
    """Serialize to LP format (Maximize / Subject To / Bounds / Binary / End)."""
    lines: list[str] = []
    lines.append("Maximize" if model.objective_sense == "maximize" else "Minimize")
    lines.append(f" obj: {_terms_str(model.objective)}")
    lines.append("Subject To")
    for con in model.constraints:
        sense = con.sense if con.sense != "=" else "="
        lines.append(f" {con.name}: {_terms_str(con.coeffs)} {sense} {_coef_str(con.rhs)}")
    lines.append("Bounds")
    for var in model.variables:
        if var.kind == BINARY:
            continue
        lines.append(f" {_coef_str(var.lower)} <= {var.name} <= {_coef_str(var.upper)}")
    lines.append("Binary")
    for var in model.variables:
        if var.kind == BINARY:
            lines.append(f" {var.name}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def variable_metadata(model: LinearModel) -> dict[str, dict]:
    """Decoding map for solver output: variable name -> role and indices."""
    meta: dict[str, dict] = {}
    for var in model.variables:
        head, *idx = var.name.split("_")
        nums = [int(t) for t in idx]
        if head == "x":
            meta[var.name] = {"role": "assignment", "vertex": nums[0], "community": nums[1]}
        elif head == "w":
            meta[var.name] = {"role": "edge_product", "u": nums[0], "v": nums[1], "community": nums[2]}
        elif head == "a":
            meta[var.name] = {"role": "community_density", "community": nums[0]}
        elif head == "y":
            meta[var.name] = {"role": "density_product", "vertex": nums[0], "community": nums[1]}
        else:
            meta[var.name] = {"role": "unknown"}
    return meta
