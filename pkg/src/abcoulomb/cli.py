"""Command-line front end: a thin client of the service layer.

Each subcommand builds the corresponding request model, obtains a
TableResponse (in process by default, or from a remote service via
--server) and renders it as CSV or JSON.  Numeric formatting: JSON keeps
the shortest round-trip representation, CSV uses 12-digit scientific
notation.

Exit codes: 0 success, 1 validation failure, 2 configuration error,
3 domain error (supercritical channel, forward cone, ...).
"""

from __future__ import annotations

import argparse
import json
import sys

from pydantic import ValidationError

from . import service
from .errors import (
    AbcoulombError,
    ConfigError,
    DomainError,
    ForwardSingularity,
    InadmissibleQuantumNumber,
    NoConvergence,
    QuadratureFailure,
    SupercriticalError,
    ZeroCouplingError,
)
from .validation import SUITE_NAMES

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_DOMAIN = 3

_DOMAIN_ERRORS = (SupercriticalError, DomainError, ForwardSingularity,
                  InadmissibleQuantumNumber, ZeroCouplingError,
                  QuadratureFailure, NoConvergence)

_COLUMNS = {
    "spectrum": ["model", "l", "n", "kappa", "gamma", "e_over_m",
                 "lambda_over_m", "regime"],
    "cross_section": ["phi", "re_f_ab", "im_f_ab", "re_f_a", "im_f_a",
                      "dsigma"],
    "phase_shifts": ["l", "delta_ab", "delta_a", "delta_total", "re_s",
                     "im_s", "abs_s", "regime"],
    "wavefunction": ["r", "f", "g"],
    "validate": [],
}


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12e}"
    return str(value)


def render_csv(response: service.TableResponse) -> str:
    columns = _COLUMNS[response.config["command"]]
    lines = [",".join(columns)]
    for row in response.rows:
        lines.append(",".join(_csv_cell(row.get(col)) for col in columns))
    return "\n".join(lines) + "\n"


def render_json(response: service.TableResponse) -> str:
    return json.dumps(response.model_dump(), indent=2) + "\n"


def _emit(response: service.TableResponse, args) -> None:
    text = render_json(response) if args.format == "json" else render_csv(response)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _coupling_params(args) -> service.CouplingParams:
    return service.CouplingParams(a=args.a, flux=args.flux, mass=args.mass)


def _parse_l_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        single = int(text)
        return single, single
    except ValueError:
        raise ConfigError(f"bad l range {text!r}; expected 'A..B' or a single integer")


def _parse_phi_grid(text: str) -> service.GridSpec:
    try:
        start, stop, count = text.split(":")
        return service.GridSpec(start=float(start), stop=float(stop),
                                count=int(count), spacing="linear")
    except (ValueError, ValidationError) as exc:
        raise ConfigError(f"bad phi grid {text!r}: {exc}")


def _parse_r_grid(text: str) -> service.GridSpec:
    try:
        kind, start, stop, count = text.split(":")
        if kind != "log":
            raise ValueError("only log grids are supported")
        return service.GridSpec(start=float(start), stop=float(stop),
                                count=int(count), spacing="log")
    except (ValueError, ValidationError) as exc:
        raise ConfigError(f"bad r grid {text!r}: {exc}")


def _kinematics(args) -> service._EnergyMomentum:
    if (args.energy is None) == (args.momentum is None):
        raise ConfigError("exactly one of --energy or --momentum is required")
    return service._EnergyMomentum(energy=args.energy, momentum=args.momentum)


def _dispatch(args, path: str, request) -> service.TableResponse:
    """Run a request in process, or against a remote server when asked."""
    if args.server:
        import httpx

        resp = httpx.post(args.server.rstrip("/") + path,
                          json=request.model_dump(), timeout=300.0)
        if resp.status_code == 400:
            raise ConfigError(resp.json().get("detail", resp.text))
        if resp.status_code == 422:
            raise DomainError(resp.json().get("detail", resp.text))
        resp.raise_for_status()
        return service.TableResponse.model_validate(resp.json())
    handler = {
        "/v1/spectrum": service.spectrum_handler,
        "/v1/cross-section": service.cross_section_handler,
        "/v1/phase-shifts": service.phase_shifts_handler,
        "/v1/wavefunction": service.wavefunction_handler,
        "/v1/validate": service.validate_handler,
    }[path]
    return handler(request)


def _cmd_spectrum(args) -> int:
    l_min, l_max = _parse_l_range(args.l)
    request = service.SpectrumRequest(
        coupling=_coupling_params(args), l_min=l_min, l_max=l_max,
        n_max=args.n_max, models=args.models.split(","))
    response = _dispatch(args, "/v1/spectrum", request)
    if response.config.get("zero_coupling"):
        print("warning: a = 0 has no bound states; table is empty",
              file=sys.stderr)
    _emit(response, args)
    return EXIT_OK


def _cmd_cross_section(args) -> int:
    request = service.CrossSectionRequest(
        coupling=_coupling_params(args), kinematics=_kinematics(args),
        phi_grid=_parse_phi_grid(args.phi_grid))
    response = _dispatch(args, "/v1/cross-section", request)
    _emit(response, args)
    return EXIT_OK


def _cmd_phase_shifts(args) -> int:
    request = service.PhaseShiftsRequest(
        coupling=_coupling_params(args), kinematics=_kinematics(args),
        l_max=args.l_max)
    response = _dispatch(args, "/v1/phase-shifts", request)
    _emit(response, args)
    return EXIT_OK


def _cmd_wavefunction(args) -> int:
    if (args.n is None) == (args.energy is None):
        raise ConfigError("exactly one of --n (bound) or --energy (continuum) "
                          "is required")
    request = service.WavefunctionRequest(
        coupling=_coupling_params(args), l=args.l, n=args.n,
        energy=args.energy,
        r_grid=_parse_r_grid(args.r_grid) if args.r_grid else None)
    response = _dispatch(args, "/v1/wavefunction", request)
    _emit(response, args)
    return EXIT_OK


def _cmd_validate(args) -> int:
    overrides = {}
    for item in args.tolerance_override or []:
        try:
            name, value = item.split("=", 1)
            overrides[name] = float(value)
        except ValueError:
            raise ConfigError(f"bad tolerance override {item!r}; expected NAME=VALUE")
    checks = None
    if args.checks is not None:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
        if not checks:
            raise ConfigError("empty check selection")
    request = service.ValidateRequest(checks=checks,
                                      tolerance_overrides=overrides)
    response = _dispatch(args, "/v1/validate", request)
    _emit(response, args)
    assert response.validation is not None
    for check in response.validation["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"{status} {check['name']}: error={check['error']:.3e} "
              f"tolerance={check['tolerance']:.3e}", file=sys.stderr)
    return EXIT_OK if response.validation["all_passed"] else EXIT_VALIDATION


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run(service.app, host=args.host, port=args.port)
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, coupling: bool = True) -> None:
    if coupling:
        parser.add_argument("--a", type=float, required=True,
                            help="Coulomb strength (>= 0)")
        parser.add_argument("--flux", type=float, default=0.0,
                            help="flux parameter eB (default 0)")
        parser.add_argument("--mass", type=float, default=1.0,
                            help="electron mass (default 1)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", help="output path (default stdout)")
    parser.add_argument("--server",
                        help="base URL of a running service; run remotely")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abcoulomb",
        description="Planar Dirac electron in a flux line plus 2D Coulomb "
                    "field: spectra, wavefunctions, phase shifts and "
                    "interference cross sections.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="bound-state levels")
    _add_common(p)
    p.add_argument("--l", default="0", help="angular range 'A..B' (default 0)")
    p.add_argument("--n-max", type=int, default=0)
    p.add_argument("--models", default="dirac",
                   help="comma list from {dirac,kg} (default dirac)")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("cross-section", help="interference cross section")
    _add_common(p)
    p.add_argument("--energy", type=float, help="total energy in units of m")
    p.add_argument("--momentum", type=float, help="momentum in units of m")
    p.add_argument("--phi-grid", required=True,
                   help="angle grid 'start:stop:count' (radians)")
    p.set_defaults(func=_cmd_cross_section)

    p = sub.add_parser("phase-shifts", help="per-channel phases and S matrix")
    _add_common(p)
    p.add_argument("--energy", type=float)
    p.add_argument("--momentum", type=float)
    p.add_argument("--l-max", type=int, default=60)
    p.set_defaults(func=_cmd_phase_shifts)

    p = sub.add_parser("wavefunction", help="radial components f, g")
    _add_common(p)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--n", type=int, help="bound state quantum number")
    p.add_argument("--energy", type=float, help="continuum energy (> m)")
    p.add_argument("--r-grid", help="'log:start:stop:count' in units 1/m")
    p.set_defaults(func=_cmd_wavefunction)

    p = sub.add_parser("validate", help="run the cross-validation suite")
    _add_common(p, coupling=False)
    p.set_defaults(format="json")
    p.add_argument("--checks",
                   help=f"comma list from {','.join(SUITE_NAMES)}")
    p.add_argument("--tolerance-override", action="append",
                   metavar="NAME=VALUE",
                   help="replace a check tolerance (repeatable)")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which matches the config exit code
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ConfigError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except AbcoulombError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
