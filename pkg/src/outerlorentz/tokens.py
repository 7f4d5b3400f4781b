"""Size selection by token: "ell:r", "lift:ell1:r", "lacunary:kappa", "size2star:kappa"."""

from __future__ import annotations

from .sizes import INF, SizeDomainError, ell_r_size, lift_size


def parse_exponent(text) -> float:
    text = str(text).strip().lower()
    if text in ("inf", "infinity", "oo"):
        return INF
    if "/" in text:
        num, den = text.split("/")
        return float(num) / float(den)
    return float(text)


def is_window_token(token: str) -> bool:
    return token.split(":")[0] in ("lacunary", "size2star")


def parse_size(token: str, setting=None, window_factory=None):
    """Build the size named by ``token``.

    Window tokens call ``window_factory(kappa)`` to obtain a TileWindow and
    return its lacunary size or size_{2,*}; the others need ``setting``.
    """
    parts = token.strip().split(":")
    kind = parts[0]
    try:
        if kind == "ell" and len(parts) == 2:
            return ell_r_size(_need(setting), parse_exponent(parts[1]))
        if kind == "lift" and len(parts) == 3 and parts[1] == "ell1":
            return lift_size(ell_r_size(_need(setting), 1.0), parse_exponent(parts[2]))
        if kind in ("lacunary", "size2star") and len(parts) == 2:
            if window_factory is None:
                raise SizeDomainError(f"size {token!r} needs a tile window")
            window = window_factory(int(parts[1]))
            return window.lacunary_size if kind == "lacunary" else window.size_2_star
    except ValueError as exc:
        if isinstance(exc, SizeDomainError):
            raise
        raise SizeDomainError(f"malformed size token {token!r}: {exc}") from exc
    raise SizeDomainError(f"unknown size token {token!r}")


def _need(setting):
    if setting is None:
        raise SizeDomainError("this size needs a setting")
    return setting
