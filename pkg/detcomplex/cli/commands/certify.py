from pathlib import Path

import typer
from typer import Option

from ..app import app
from ..utils.error_handler import ErrorHandler
from ..utils.family_options import Family, FAMILY, SIZE, COMPOSITION, resolve_family, read_text
from ...core import log
from ...core.certifier import certify_lower_bound, check_certificate
from ...core.documents import certificate_from_toml, certificate_to_toml
from ...core.errors import CertificationError, InvalidSpecError

__all__ = []


@app.command()
def certify(
        family: Family | None = FAMILY,
        n: int | None = SIZE,
        comp: str | None = COMPOSITION,
        out: Path | None = Option(None, "--out", "-o", show_default=False,
                                  help="Write the certificate here instead of stdout"),
        check: Path | None = Option(None, "--check", show_default=False,
                                    help="Recompute a stored certificate and compare"),
        no_structure: bool = Option(False, "--no-structure",
                                    help="Skip the comparison with the closed-form Hessian blocks"),
):
    """
    Certify a determinantal complexity lower bound from the Hessian rank at an explicit zero
    """
    with ErrorHandler():
        if check is not None:
            if family is not None:
                raise InvalidSpecError("--check reads the family from the certificate; drop --family")
            stored = certificate_from_toml(read_text(check))
            fresh = check_certificate(stored)
            typer.echo(f"ok {fresh.spec}: rank {fresh.rank}, lower bound {fresh.lower_bound_int}, "
                       f"upper bound {fresh.upper_bound}")
            return

        spec = resolve_family(family, n, comp)
        cert = certify_lower_bound(spec, check_structure=not no_structure)
        text = certificate_to_toml(cert)
        if out is None:
            typer.echo(text, nl=False)
        else:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(text, encoding="utf-8")
            log.info("Wrote %s", out)
        if cert.structure_check is False:
            raise CertificationError(f"Hessian of {spec} differs from its closed-form block structure")
