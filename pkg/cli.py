"""
Command-line interface of the ore-kernel.

Results are printed as JSON on stdout (DOT text for ``lattice dot``),
diagnostics go to stderr. Exit codes: 0 for a definite answer, 2 when the
answer is unknown within the configured budgets, 1 for errors.
"""

from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

import typer
from pydantic import ValidationError
from rich.console import Console

from core.closure import (
    Verdict,
    WeylVerdict,
    WeylVerifyOracle,
    closure_oracle,
    iterated_closure,
    lattice_closure_z,
    poly_ideal_closure,
    torsion_z,
    weyl_saturation_verify,
)
from core.expressions import parse_element
from core.formatting import (
    EXIT_DEFINITE,
    EXIT_ERROR,
    EXIT_UNKNOWN,
    classification_payload,
    dot_counts,
    element_text,
    elements_text,
    error_payload,
    fraction_payload,
    lattice_dot,
    lattice_payload,
    ore_pair_payload,
    saturated_payload,
    set_payload,
    to_json,
    torsion_payload,
    trace_lines,
    tree_dot,
    tri_exit_code,
    weyl_report_payload,
    witness_payload,
)
from core.groebner import LeftIdeal, groebner_basis, ideal_member
from core.localization import (
    LocCtx,
    equality_characterizations,
    frac_equals,
    frac_ore_pair,
    hom_iso_check,
    normalize,
    omega_map,
    two_step_compose,
    unit_invert,
)
from core.ore_sets import WitnessOutcome, lsat_witness, ore_falsify, ore_solve
from core.rings import WEYL, Element, RingId, RingTag, Tri, UniPoly, WeylOp
from core.saturation import (
    classify,
    closure_equal,
    ideal_hat,
    join,
    leq,
    loc_type_tags,
    lsat_generators,
    lsat_member,
    meet,
)
from core.sets import OreSetDesc
from core.weyl import fourier, grade_decompose, inverse_fourier, theta_form
from models.data_models import (
    ClosurePlanModel,
    LatticeModel,
    parse_fraction,
    parse_lattice,
    parse_saturated,
    parse_set,
)
from utils.config import KernelConfig
from utils.exceptions import OreKernelError, ParseError
from utils.logging_utils import ContextLogger, setup_logging

logger = ContextLogger("cli")

console = Console(stderr=True)

app = typer.Typer(
    help="Exact arithmetic for Ore localizations.",
    no_args_is_help=True,
    add_completion=False,
)
frac_app = typer.Typer(help="Left-fraction arithmetic in S^-1 R.")
lsat_app = typer.Typer(help="Left saturation closures of multiplicative sets.")
lattice_app = typer.Typer(help="The lattice of saturated localizations of Z.")
closure_app = typer.Typer(help="Local closures of lattices, ideals and modules.")
weyl_app = typer.Typer(help="Weyl-algebra toolkit.")
app.add_typer(frac_app, name="frac")
app.add_typer(lsat_app, name="lsat")
app.add_typer(lattice_app, name="lattice")
app.add_typer(closure_app, name="closure")
app.add_typer(weyl_app, name="weyl")


def _ring_option() -> Any:
    return typer.Option("Z", "--ring", "-r", help="Z, QX or weyl")


def _set_option() -> Any:
    return typer.Option(..., "--set", "-s", help="Set shorthand or OreSetDesc JSON")


@app.callback()
def main(
    ctx: typer.Context,
    budget_degree: Optional[int] = typer.Option(
        None, "--budget-degree", help="Degree bound of witness searches"
    ),
    budget_exponent: Optional[int] = typer.Option(
        None, "--budget-exponent", help="Exponent bound of powers and shifts"
    ),
    gb_pair_limit: Optional[int] = typer.Option(
        None, "--gb-pair-limit", help="Pair budget of Buchberger's algorithm"
    ),
    log_level: str = typer.Option(
        "WARNING", "--log-level", envvar="ORE_LOG_LEVEL", help="Logging level"
    ),
    log_file: Optional[str] = typer.Option(
        None, "--log-file", envvar="ORE_LOG_FILE", help="Also write logs to this file"
    ),
) -> None:
    """Budgets default to the ORE_* environment variables."""
    setup_logging(log_level, log_file=log_file)
    ctx.obj = KernelConfig.from_env(
        budget_degree=budget_degree,
        budget_exponent=budget_exponent,
        gb_pair_limit=gb_pair_limit,
    )


# plumbing


def _config(ctx: typer.Context) -> KernelConfig:
    obj = ctx.find_root().obj
    return obj if isinstance(obj, KernelConfig) else KernelConfig.from_env()


@contextmanager
def _guard() -> Iterator[None]:
    """Report kernel and validation errors as JSON with exit code 1."""
    try:
        yield
    except (OreKernelError, ValidationError, ValueError, TypeError) as exc:
        logger.debug(f"Command failed with {type(exc).__name__}")
        typer.echo(to_json(error_payload(exc)))
        console.print(f"error: {exc}", style="red", markup=False)
        raise typer.Exit(EXIT_ERROR)


def _emit(payload: Dict[str, Any], code: int = EXIT_DEFINITE) -> None:
    typer.echo(to_json(payload))
    if code != EXIT_DEFINITE:
        raise typer.Exit(code)


def _ring(name: str) -> RingId:
    return RingId.parse(name)


def _elements(text: str, ring: RingId) -> List[Element]:
    """Elements separated by ``;``."""
    items = [item.strip() for item in text.split(";") if item.strip()]
    if not items:
        raise ParseError("Expected at least one element")
    return [parse_element(item, ring) for item in items]


def _weyl_ops(text: str) -> List[WeylOp]:
    return [op for op in _elements(text, WEYL) if isinstance(op, WeylOp)]


def _json_text(value: str) -> str:
    """Inline JSON, or ``@path`` to read it from a file."""
    if value.startswith("@"):
        return Path(value[1:]).read_text(encoding="utf-8")
    return value


def _primes(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise ParseError(f"Primes are given as a comma list, got {text!r}") from exc


def _ideal_payload(ideal: LeftIdeal) -> List[str]:
    return elements_text(ideal.generators)


def _tri(value: Tri) -> Any:
    if value is Tri.UNKNOWN:
        return "unknown"
    return value is Tri.YES


# elements


@app.command("eval")
def eval_command(
    expr: str = typer.Argument(..., help="Expression in the element grammar"),
    ring: str = _ring_option(),
) -> None:
    """Evaluate an expression to its normal form."""
    with _guard():
        _emit({"result": element_text(parse_element(expr, _ring(ring)))})


# fractions


@frac_app.command("add")
def frac_add_command(
    ctx: typer.Context,
    a: str = typer.Argument(..., help="Fraction 's | r'"),
    b: str = typer.Argument(..., help="Fraction 's | r'"),
    set_: str = _set_option(),
    ring: str = _ring_option(),
) -> None:
    """Sum of two fractions."""
    with _guard():
        config = _config(ctx)
        S = parse_set(set_, _ring(ring))
        result = parse_fraction(a, S, config) + parse_fraction(b, S, config)
        _emit({"result": fraction_payload(result)})


@frac_app.command("mul")
def frac_mul_command(
    ctx: typer.Context,
    a: str = typer.Argument(..., help="Fraction 's | r'"),
    b: str = typer.Argument(..., help="Fraction 's | r'"),
    set_: str = _set_option(),
    ring: str = _ring_option(),
) -> None:
    """Product of two fractions."""
    with _guard():
        config = _config(ctx)
        S = parse_set(set_, _ring(ring))
        result = parse_fraction(a, S, config) * parse_fraction(b, S, config)
        _emit({"result": fraction_payload(result)})


@frac_app.command("eq")
def frac_eq_command(
    ctx: typer.Context,
    a: str = typer.Argument(..., help="Fraction 's | r'"),
    b: str = typer.Argument(..., help="Fraction 's | r'"),
    set_: str = _set_option(),
    ring: str = _ring_option(),
    criteria: bool = typer.Option(
        False, "--criteria", help="Also evaluate every equality criterion"
    ),
) -> None:
    """Semantic equality of two fractions."""
    with _guard():
        config = _config(ctx)
        S = parse_set(set_, _ring(ring))
        fa, fb = parse_fraction(a, S, config), parse_fraction(b, S, config)
        payload: Dict[str, Any] = {"equal": frac_equals(fa, fb)}
        if criteria:
            found = equality_characterizations(fa, fb)
            payload["criteria"] = found.as_dict()
            payload["x_ring"] = element_text(found.x_ring)
            payload["x_ring_in_lsat"] = _tri(found.x_ring_in_lsat)
        _emit(payload)


@frac_app.command("ore-pair")
def frac_ore_pair_command(
    ctx: typer.Context,
    a: str = typer.Argument(..., help="Fraction 's | r'"),
    b: str = typer.Argument(..., help="Nonzero fraction 's | r'"),
    set_: str = _set_option(),
    ring: str = _ring_option(),
) -> None:
    """Fractions x != 0 and y with x * a == y * b (commutative rings)."""
    with _guard():
        config = _config(ctx)
        S = parse_set(set_, _ring(ring))
        x, y = frac_ore_pair(parse_fraction(a, S, config), parse_fraction(b, S, config))
        _emit({"x": fraction_payload(x), "y": fraction_payload(y)})


@frac_app.command("normalize")
def frac_normalize_command(
    ctx: typer.Context,
    a: str = typer.Argument(..., help="Fraction 's | r'"),
    set_: str = _set_option(),
    ring: str = _ring_option(),
) -> None:
    """Display form with the common gcd divided out."""
    with _guard():
        S = parse_set(set_, _ring(ring))
        den, num = normalize(parse_fraction(a, S, _config(ctx)))
        _emit({"den": element_text(den), "num": element_text(num)})


# saturation


@lsat_app.command("member")
def lsat_member_command(
    ctx: typer.Context,
    element: str = typer.Argument(..., help="Element to test"),
    set_: str = _set_option(),
    ring: str = _ring_option(),
) -> None:
    """Membership in LSat(S)."""
    with _guard():
        S = parse_set(set_, _ring(ring))
        answer = lsat_member(S, parse_element(element, S.ring), _config(ctx))
        _emit({"member": _tri(answer)}, tri_exit_code(answer))


@lsat_app.command("witness")
def lsat_witness_command(
    ctx: typer.Context,
    element: str = typer.Argument(..., help="Element r"),
    set_: str = _set_option(),
    ring: str = _ring_option(),
) -> None:
    """An element w with w * r in S."""
    with _guard():
        S = parse_set(set_, _ring(ring))
        result = lsat_witness(S, parse_element(element, S.ring), _config(ctx))
        code = EXIT_UNKNOWN if result.outcome is WitnessOutcome.UNKNOWN else 0
        _emit(witness_payload(result), code)


@lsat_app.command("generators")
def lsat_generators_command(
    ctx: typer.Context,
    set_: str = _set_option(),
    ring: str = _ring_option(),
) -> None:
    """Irreducible normal form of LSat(S) over Z or QX."""
    with _guard():
        S = parse_set(set_, _ring(ring))
        _emit({"normal_form": saturated_payload(lsat_generators(S, _config(ctx)))})


@lsat_app.command("closure-equal")
def lsat_closure_equal_command(
    ctx: typer.Context,
    set_: str = _set_option(),
    other: str = typer.Option(..., "--other", "-t", help="Second set"),
    ring: str = _ring_option(),
) -> None:
    """Decide LSat(S) == LSat(T)."""
    with _guard():
        S = parse_set(set_, _ring(ring))
        T = parse_set(other, _ring(ring))
        answer = closure_equal(S, T, _config(ctx))
        _emit({"equal": _tri(answer)}, tri_exit_code(answer))


@app.command("unit")
def unit_command(
    ctx: typer.Context,
    frac: str = typer.Option(..., "--frac", "-f", help="Fraction 's | r'"),
    set_: str = _set_option(),
    ring: str = _ring_option(),
) -> None:
    """Decide whether a fraction is a unit and give its inverse."""
    with _guard():
        S = parse_set(set_, _ring(ring))
        result = unit_invert(parse_fraction(frac, S, _config(ctx)))
        payload: Dict[str, Any] = {"unit": _tri(result.status)}
        if result.inverse is not None:
            payload["inverse"] = fraction_payload(result.inverse)
        _emit(payload, tri_exit_code(result.status))


def _witness_map(items: List[str], ring: RingId) -> Dict[Element, Element]:
    witnesses: Dict[Element, Element] = {}
    for item in items:
        if "=" not in item:
            raise ParseError(f"Expected 'generator=witness', got {item!r}")
        generator, witness = item.split("=", 1)
        witnesses[parse_element(generator, ring)] = parse_element(witness, ring)
    return witnesses


@app.command("omega")
def omega_command(
    ctx: typer.Context,
    frac: str = typer.Option(..., "--frac", "-f", help="Fraction 's | r' over S"),
    source: str = typer.Option(..., "--from", help="Set S"),
    target: str = typer.Option(..., "--to", help="Set T with S in LSat(T)"),
    witness: List[str] = typer.Option(
        [], "--witness", "-w", help="Saturation witness 'generator=w'"
    ),
    ring: str = _ring_option(),
) -> None:
    """Image of a fraction under the canonical map S^-1 R -> T^-1 R."""
    with _guard():
        config = _config(ctx)
        S = parse_set(source, _ring(ring))
        T = parse_set(target, _ring(ring))
        a = parse_fraction(frac, S, config)
        image = omega_map(LocCtx(T, config), a, _witness_map(witness, S.ring))
        _emit({"result": fraction_payload(image)})


@app.command("hom-check")
def hom_check_command(
    ctx: typer.Context,
    source: str = typer.Option(..., "--from", help="Set S"),
    target: str = typer.Option(..., "--to", help="Set T"),
    ring: str = _ring_option(),
) -> None:
    """Is there an R-fixing map S^-1 R -> T^-1 R, and is it an isomorphism?"""
    with _guard():
        S = parse_set(source, _ring(ring))
        T = parse_set(target, _ring(ring))
        result = hom_iso_check(S, T, _config(ctx))
        code = EXIT_DEFINITE if result.is_definite else EXIT_UNKNOWN
        _emit(
            {
                "kind": result.kind.value,
                "forward": _tri(result.forward),
                "backward": _tri(result.backward),
            },
            code,
        )


@app.command("classify")
def classify_command(
    ctx: typer.Context,
    set_: str = _set_option(),
    ring: str = _ring_option(),
) -> None:
    """Maximality and integer type of LSat(S), plus localization types."""
    with _guard():
        S = parse_set(set_, _ring(ring))
        payload: Dict[str, Any] = {}
        if S.ring.is_commutative:
            payload.update(classification_payload(classify(S, _config(ctx))))
        payload["types"] = sorted(tag.value for tag in loc_type_tags(S))
        _emit(payload)


@app.command("ideal-hat")
def ideal_hat_command(
    ctx: typer.Context,
    generator: str = typer.Argument(..., help="Generator of the principal ideal"),
    element: Optional[str] = typer.Option(
        None, "--element", "-e", help="Also give a witness for this element"
    ),
    ring: str = _ring_option(),
) -> None:
    """The set (I minus 0) + {1} of a principal ideal and its classification."""
    with _guard():
        config = _config(ctx)
        base = _ring(ring)
        S, found = ideal_hat(base, parse_element(generator, base), config)
        payload: Dict[str, Any] = {
            "set": set_payload(S),
            "classification": classification_payload(found),
        }
        if element is not None:
            result = lsat_witness(S, parse_element(element, base), config)
            payload["witness"] = witness_payload(result)
        _emit(payload)


# lattice of saturated sets of Z and Q[x]


@lattice_app.command("dot")
def lattice_dot_command(
    primes: str = typer.Option("2,3,5", "--primes", "-p", help="Comma list of primes"),
    layout: str = typer.Option("lattice", "--layout", help="lattice or tree"),
) -> None:
    """DOT text of the lattice (Hasse diagram) or the binary tree."""
    with _guard():
        chosen = _primes(primes)
        if layout == "lattice":
            dot = lattice_dot(chosen)
        elif layout == "tree":
            dot = tree_dot(chosen)
        else:
            raise ParseError(f"Unknown layout {layout!r}")
        counts = dot_counts(dot)
        logger.info(
            f"{layout} of {len(chosen)} primes: "
            f"{counts['nodes']} nodes, {counts['edges']} edges"
        )
        typer.echo(dot, nl=False)


@lattice_app.command("join")
def lattice_join_command(
    a: str = typer.Argument(..., help="primes:... / coprimes:... or JSON"),
    b: str = typer.Argument(..., help="primes:... / coprimes:... or JSON"),
    ring: str = _ring_option(),
) -> None:
    """Smallest saturated set containing both."""
    with _guard():
        base = _ring(ring)
        result = join(parse_saturated(a, base), parse_saturated(b, base))
        _emit({"result": saturated_payload(result)})


@lattice_app.command("meet")
def lattice_meet_command(
    a: str = typer.Argument(..., help="primes:... / coprimes:... or JSON"),
    b: str = typer.Argument(..., help="primes:... / coprimes:... or JSON"),
    ring: str = _ring_option(),
) -> None:
    """Intersection of two saturated sets."""
    with _guard():
        base = _ring(ring)
        result = meet(parse_saturated(a, base), parse_saturated(b, base))
        _emit({"result": saturated_payload(result)})


@lattice_app.command("leq")
def lattice_leq_command(
    a: str = typer.Argument(..., help="primes:... / coprimes:... or JSON"),
    b: str = typer.Argument(..., help="primes:... / coprimes:... or JSON"),
    ring: str = _ring_option(),
) -> None:
    """Inclusion of saturated sets."""
    with _guard():
        base = _ring(ring)
        _emit({"leq": leq(parse_saturated(a, base), parse_saturated(b, base))})


# closures


@closure_app.command("lattice-z")
def closure_lattice_command(
    ctx: typer.Context,
    lattice: str = typer.Option(..., "--lattice", "-l", help="Lattice JSON or @file"),
    set_: str = _set_option(),
) -> None:
    """Closure P^S of a sublattice of Z^n."""
    with _guard():
        P = parse_lattice(_json_text(lattice))
        sat = lsat_generators(parse_set(set_, RingId.parse("Z")), _config(ctx))
        _emit({"result": lattice_payload(lattice_closure_z(P, sat))})


@closure_app.command("poly")
def closure_poly_command(
    ctx: typer.Context,
    poly: str = typer.Argument(..., help="Generator f of the ideal (f) in QX"),
    set_: str = _set_option(),
) -> None:
    """Generator of the closure (f)^S in Q[x]."""
    with _guard():
        base = RingId.parse("QX")
        f = parse_element(poly, base)
        assert isinstance(f, UniPoly)
        sat = lsat_generators(parse_set(set_, base), _config(ctx))
        _emit({"result": element_text(poly_ideal_closure(f, sat))})


@closure_app.command("verify-weyl")
def closure_verify_weyl_command(
    ctx: typer.Context,
    old: str = typer.Option(..., "--old", help="Generators of L, ';'-separated"),
    candidate: str = typer.Option(..., "--candidate", help="Candidate generators"),
    set_: str = _set_option(),
    budget: Optional[int] = typer.Option(None, "--budget", help="Search bound"),
    stability: bool = typer.Option(True, "--stability/--no-stability"),
) -> None:
    """Certify that a candidate ideal lies between L and its S-closure."""
    with _guard():
        S = parse_set(set_, WEYL)
        report = weyl_saturation_verify(
            _weyl_ops(old),
            _weyl_ops(candidate),
            S,
            budget,
            check_stability=stability,
            config=_config(ctx),
        )
        code = EXIT_UNKNOWN if report.verdict is WeylVerdict.BUDGET_EXHAUSTED else 0
        _emit(weyl_report_payload(report), code)


@closure_app.command("run")
def closure_run_command(
    ctx: typer.Context,
    plan: str = typer.Option(..., "--plan", help="ClosurePlan JSON or @file"),
    lattice: Optional[str] = typer.Option(None, "--lattice", help="Z-lattice JSON"),
    poly: Optional[str] = typer.Option(None, "--poly", help="Generator in QX"),
    ideal: Optional[str] = typer.Option(None, "--ideal", help="Weyl generators"),
    candidate: List[str] = typer.Option(
        [], "--candidate", help="Candidate Weyl ideal, ascending; repeatable"
    ),
) -> None:
    """Iterated closure along a schedule; prints the trace as JSON lines."""
    with _guard():
        config = _config(ctx)
        plan_model = ClosurePlanModel.model_validate_json(_json_text(plan))
        closure_plan = plan_model.to_domain()
        sets = [S for S in closure_plan.sets if isinstance(S, OreSetDesc)]
        ring = sets[0].ring
        start: Any
        render: Any
        oracles: Dict[int, Any] = {}
        if ring.tag is RingTag.WEYL:
            if ideal is None:
                raise ParseError("A Weyl closure needs --ideal")
            start = LeftIdeal(_weyl_ops(ideal), config)
            ideals = [LeftIdeal(_weyl_ops(c), config) for c in candidate]
            for i, S in enumerate(sets):
                oracles[i] = WeylVerifyOracle(S, ideals, config=config)
            render = _ideal_payload
        else:
            for i, S in enumerate(sets):
                oracles[i] = closure_oracle(lsat_generators(S, config))
            if ring.tag is RingTag.Z:
                if lattice is None:
                    raise ParseError("A closure over Z needs --lattice")
                start = parse_lattice(_json_text(lattice))
                render = lattice_payload
            else:
                if poly is None:
                    raise ParseError("A closure over QX needs --poly")
                start = parse_element(poly, ring)
                render = element_text
        result, trace = iterated_closure(start, closure_plan, oracles, config)
        for line in trace_lines(trace, render):
            typer.echo(line)
        stabilized = trace.verdict is Verdict.STABILIZED
        _emit(
            {"result": render(result), "verdict": trace.verdict.value},
            EXIT_DEFINITE if stabilized else EXIT_UNKNOWN,
        )


@app.command("torsion")
def torsion_command(
    ctx: typer.Context,
    module: str = typer.Option(..., "--module", "-m", help="Relations as lattice JSON"),
    set_: str = _set_option(),
) -> None:
    """S-torsion submodule of Z^n / P."""
    with _guard():
        M = LatticeModel.model_validate_json(_json_text(module)).to_module()
        sat = lsat_generators(parse_set(set_, RingId.parse("Z")), _config(ctx))
        _emit(torsion_payload(torsion_z(M, sat)))


# Weyl toolkit


def _weyl_element(text: str) -> WeylOp:
    element = parse_element(text, WEYL)
    assert isinstance(element, WeylOp)
    return element


@weyl_app.command("grade")
def weyl_grade_command(element: str = typer.Argument(..., help="Weyl element")) -> None:
    """Homogeneous parts of an operator (deg x = -1, deg d = 1)."""
    with _guard():
        parts = grade_decompose(_weyl_element(element))
        _emit(
            {
                "parts": [
                    {"degree": part.degree, "component": element_text(part.component)}
                    for part in parts
                ]
            }
        )


@weyl_app.command("theta-form")
def weyl_theta_form_command(
    element: str = typer.Argument(..., help="Homogeneous Weyl element")
) -> None:
    """Write a homogeneous operator as c * t(theta) * y^n."""
    with _guard():
        form = theta_form(_weyl_element(element))
        _emit(
            {
                "coeff": str(form.coeff),
                "theta_poly": form.tpoly.format(compact=True),
                "y": form.y,
                "n": form.n,
            }
        )


@weyl_app.command("fourier")
def weyl_fourier_command(
    element: str = typer.Argument(..., help="Weyl element"),
    inverse: bool = typer.Option(False, "--inverse", help="Apply the inverse map"),
) -> None:
    """Fourier automorphism x -> -d, d -> x."""
    with _guard():
        op = _weyl_element(element)
        _emit({"result": element_text(inverse_fourier(op) if inverse else fourier(op))})


@weyl_app.command("ore-solve")
def weyl_ore_solve_command(
    ctx: typer.Context,
    s: str = typer.Argument(..., help="Element s of S"),
    r: str = typer.Argument(..., help="Element r"),
    set_: str = _set_option(),
    ring: str = typer.Option("weyl", "--ring", "-r", help="Z, QX or weyl"),
) -> None:
    """Ore pair: s~ in S with s~ * r == r~ * s."""
    with _guard():
        S = parse_set(set_, _ring(ring))
        pair = ore_solve(
            S, parse_element(s, S.ring), parse_element(r, S.ring), _config(ctx)
        )
        _emit(ore_pair_payload(pair))


@weyl_app.command("gb")
def weyl_gb_command(
    ctx: typer.Context,
    generators: List[str] = typer.Argument(..., help="Generators of a left ideal"),
) -> None:
    """Reduced left Gröbner basis."""
    with _guard():
        ops = [_weyl_element(g) for g in generators]
        basis = groebner_basis(ops, _config(ctx))
        _emit({"basis": elements_text(basis), "order": basis.order})


@weyl_app.command("member")
def weyl_member_command(
    ctx: typer.Context,
    element: str = typer.Argument(..., help="Weyl element"),
    ideal: str = typer.Option(..., "--ideal", "-i", help="Generators, ';'-separated"),
) -> None:
    """Left-ideal membership with the normal form of the element."""
    with _guard():
        basis = groebner_basis(_weyl_ops(ideal), _config(ctx))
        result = ideal_member(_weyl_element(element), basis)
        _emit(
            {"member": result.member, "normal_form": element_text(result.normal_form)}
        )


@weyl_app.command("falsify")
def weyl_falsify_command(
    ctx: typer.Context,
    s: str = typer.Argument(..., help="Element s of S"),
    r: str = typer.Argument(..., help="Element r"),
    set_: str = _set_option(),
    bound: int = typer.Option(8, "--bound", "-b", help="Maximal number of atoms"),
) -> None:
    """Search the small elements of S for an Ore pair."""
    with _guard():
        S = parse_set(set_, WEYL)
        report = ore_falsify(
            S, parse_element(s, S.ring), parse_element(r, S.ring), bound, _config(ctx)
        )
        payload: Dict[str, Any] = {
            "solution": None,
            "message": report.message,
            "bound": report.bound,
            "checked": report.checked,
        }
        if report.solution is not None:
            payload["solution"] = ore_pair_payload(report.solution)
        _emit(payload, EXIT_UNKNOWN if report.truncated else EXIT_DEFINITE)


@app.command("two-step")
def two_step_command(
    ctx: typer.Context,
    frac: str = typer.Option(..., "--frac", "-f", help="Fraction 's | r' over S"),
    t: str = typer.Option(..., "--t", help="Outer denominator t in T"),
    inner: str = typer.Option(..., "--inner", help="Set S"),
    outer: str = typer.Option(..., "--outer", help="Set T"),
    ring: str = _ring_option(),
) -> None:
    """Compose ((1, t), (s, r)) into the localization at the union of S and T."""
    with _guard():
        config = _config(ctx)
        S = parse_set(inner, _ring(ring))
        T = parse_set(outer, _ring(ring))
        a = parse_fraction(frac, S, config)
        result = two_step_compose(S, T, parse_element(t, S.ring), a)
        _emit({"result": fraction_payload(result, with_set=True)})


if __name__ == "__main__":
    app()
