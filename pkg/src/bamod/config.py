"""TOML configuration for spectral data, bases and eigenfunctions.

Schema (exactly one of the two top-level tables):

    [gamma]
    n = 2
    P = ["0", "1", "1", "0"]        # row-major, entries "a/b+c/d i"
    A = "1"
    Lambda = "1"
    f = "-z1*t1 - z2*t2"
    [[gamma.flows]]
    form = "z1*t2 + z2*t1 - i*z2*t2"
    c = "-i"

    [omega]
    B = "1"
    Lambda = "1"
    g = "z1*w1 + z1*w2 + z2*w2"
    [[omega.flows]]
    form = "z1*w1 + 2*z2*w1 - z2*w2"
    c = "1"

An optional [basis] table supplies user-chosen grade-1 numerators (these
may use q-coefficients):

    [basis]
    elements = ["z1*t1 + q*z2*t2", "z1*t2 + q*z2*t1"]

Eigenfunction command-line specifications use the text form
``num = <form>; d = <int>``.  Unknown keys anywhere are rejected.
"""

from __future__ import annotations

try:
    import tomllib as _toml
except ModuleNotFoundError:  # Python < 3.11
    import tomli as _toml

from .bamodule import ModuleBasis, ModuleElement
from .biform import MatrixP, parse_form
from .errors import ConfigError
from .gaussq import parse_gaussq
from .mero import MeroFunc
from .spectral import FlowForm, GammaData, OmegaData


def _reject_unknown(table: dict, allowed, where: str):
    unknown = set(table) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in {where}")


def _gq(value, where: str):
    if not isinstance(value, str):
        raise ConfigError(f"{where} must be a string scalar literal")
    try:
        return parse_gaussq(value)
    except ValueError as exc:
        raise ConfigError(f"bad scalar {value!r} in {where}") from exc


def _flows(table, n: int, where: str):
    flows = []
    for k, item in enumerate(table):
        _reject_unknown(item, {"form", "c"}, f"{where}[{k}]")
        if "form" not in item or "c" not in item:
            raise ConfigError(f"{where}[{k}] needs 'form' and 'c'")
        flows.append(FlowForm(parse_form(item["form"], n=n),
                              _gq(item["c"], f"{where}[{k}].c")))
    return flows


def parse_data_config(text: str):
    """Parse a TOML document into (data, basis_forms_or_None)."""
    try:
        doc = _toml.loads(text)
    except _toml.TOMLDecodeError as exc:
        raise ConfigError(f"malformed TOML: {exc}") from exc
    _reject_unknown(doc, {"gamma", "omega", "basis"}, "document root")
    has_gamma = "gamma" in doc
    has_omega = "omega" in doc
    if has_gamma == has_omega:
        raise ConfigError("exactly one of [gamma] or [omega] is required")

    if has_gamma:
        tab = doc["gamma"]
        _reject_unknown(tab, {"n", "P", "A", "Lambda", "f", "flows"}, "[gamma]")
        for key in ("n", "P", "A", "Lambda", "f", "flows"):
            if key not in tab:
                raise ConfigError(f"[gamma] is missing '{key}'")
        n = tab["n"]
        if not isinstance(n, int) or n < 2:
            raise ConfigError("[gamma].n must be an integer >= 2")
        raw = tab["P"]
        if not isinstance(raw, list) or len(raw) != n * n:
            raise ConfigError(f"[gamma].P must list {n * n} row-major entries")
        entries = [_gq(v, "[gamma].P") for v in raw]
        P = MatrixP([entries[r * n:(r + 1) * n] for r in range(n)])
        data = GammaData(
            n, P, _gq(tab["A"], "[gamma].A"), _gq(tab["Lambda"], "[gamma].Lambda"),
            parse_form(tab["f"], n=n), _flows(tab["flows"], n, "[gamma].flows"))
    else:
        tab = doc["omega"]
        _reject_unknown(tab, {"B", "Lambda", "g", "flows"}, "[omega]")
        for key in ("B", "Lambda", "g", "flows"):
            if key not in tab:
                raise ConfigError(f"[omega] is missing '{key}'")
        data = OmegaData(
            _gq(tab["B"], "[omega].B"), _gq(tab["Lambda"], "[omega].Lambda"),
            parse_form(tab["g"], n=2), _flows(tab["flows"], 2, "[omega].flows"))

    basis_forms = None
    if "basis" in doc:
        _reject_unknown(doc["basis"], {"elements"}, "[basis]")
        strings = doc["basis"].get("elements")
        if not isinstance(strings, list) or not strings:
            raise ConfigError("[basis].elements must be a non-empty list")
        ctx = data.context()
        basis_forms = [parse_form(s, n=data.n, ctx=ctx).to_exprat(ctx)
                       for s in strings]
    return data, basis_forms


def build_basis(data, basis_forms) -> ModuleBasis:
    elements = [ModuleElement(data, 1, bf) for bf in basis_forms]
    return ModuleBasis(data, elements)


def parse_lambda_spec(spec: str, data) -> MeroFunc:
    """Parse ``num = <form>; d = <int>`` into a meromorphic function."""
    parts = [p.strip() for p in spec.split(";")]
    num_text = None
    d_text = None
    for part in parts:
        if not part:
            continue
        key, eq, value = part.partition("=")
        if not eq:
            raise ConfigError(f"bad eigenfunction spec fragment {part!r}")
        key = key.strip()
        if key == "num":
            num_text = value.strip()
        elif key == "d":
            d_text = value.strip()
        else:
            raise ConfigError(f"unknown key {key!r} in eigenfunction spec")
    if num_text is None or d_text is None:
        raise ConfigError("eigenfunction spec needs both 'num' and 'd'")
    try:
        d = int(d_text)
    except ValueError as exc:
        raise ConfigError(f"bad pole order {d_text!r}") from exc
    numerator = parse_form(num_text, n=data.n)
    return MeroFunc(data, d, numerator)
