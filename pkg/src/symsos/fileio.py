"""Self-contained text serialization of certificates.

The format embeds the presentation, per-block envelopes, Gram entries and Pi
matrices, so verification needs no catalogs: parse, expand, and compare.
Rationals are rendered "p/q"; theta/eta symbols are t1..ts and h2..ht.
"""

from __future__ import annotations

from fractions import Fraction

from .certificates import CertBlock, Certificate
from .equivariants import PiMatrix
from .invariants import InvariantPoly, InvariantPresentation
from .poly import Monomial, Polynomial, parse_polynomial, render_polynomial


def _mono_text(mono: Monomial, names: list[str]) -> str:
    if not any(mono):
        return "1"
    return "*".join(f"{names[i]}^{e}" if e > 1 else names[i]
                    for i, e in enumerate(mono) if e)


def _invariant_poly_text(ip: InvariantPoly, pres: InvariantPresentation) -> str:
    names = pres.symbol_names()
    parts = []
    for j, part in sorted(ip.parts.items()):
        for mono, coef in part.terms.items():
            full = tuple(mono) + tuple(0 if k != j - 1 else 1
                                       for k in range(len(pres.eta) - 1))
            parts.append((full, coef))
    if not parts:
        return "0"
    return render_polynomial(Polynomial(len(names), dict(parts)), names)


def _parse_invariant_poly(text: str, pres: InvariantPresentation) -> InvariantPoly:
    names = pres.symbol_names()
    poly = parse_polynomial(text, names)
    s = len(pres.theta)
    parts: dict[int, dict] = {}
    for mono, coef in poly.terms.items():
        theta_part, eta_part = mono[:s], mono[s:]
        js = [k for k, e in enumerate(eta_part) if e]
        if sum(eta_part) > 1:
            raise ValueError("eta symbols must appear linearly in Pi entries")
        j = js[0] + 1 if js else 0
        parts.setdefault(j, {})[theta_part] = coef
    return InvariantPoly(s, {j: Polynomial(s, terms) for j, terms in parts.items()})


def certificate_to_text(cert: Certificate) -> str:
    if not cert.exact:
        raise ValueError("only exact certificates are serialized")
    lines = ["symsos-certificate v1", f"mode {cert.mode}", f"group {cert.group}",
             "vars " + " ".join(cert.var_names), f"lambda {cert.lam}",
             f"objective {cert.objective}"]
    if cert.mode == "plain":
        lines.append("monomials " + " ".join(_mono_text(m, cert.var_names)
                                             for m in cert.monomials))
        n = len(cert.monomials)
        lines.append(f"gram {n}")
        for r in range(n):
            for c in range(r, n):
                if cert.gram[r][c] != 0:
                    lines.append(f"{r} {c} {cert.gram[r][c]}")
        lines.append("end-gram")
        lines.append("end")
        return "\n".join(lines)
    pres = cert.pres
    lines.append(f"presentation nvars={pres.nvars}")
    lines += [f"theta {render_polynomial(p, cert.var_names)}" for p in pres.theta]
    lines += [f"eta {render_polynomial(p, cert.var_names)}" for p in pres.eta]
    lines.append("end-presentation")
    tnames = pres.symbol_names()
    for blk in cert.blocks:
        lines.append(f"block {blk.label}")
        for row in blk.rows:
            lines.append("row " + (" ".join(_mono_text(a, tnames[:len(pres.theta)])
                                            for a in row) if row else "empty"))
        size = sum(len(r) for r in blk.rows)
        lines.append(f"gram {size}")
        for r in range(size):
            for c in range(r, size):
                if blk.gram[r][c] != 0:
                    lines.append(f"{r} {c} {blk.gram[r][c]}")
        lines.append("end-gram")
        lines.append(f"pi {blk.pi.rank}")
        for r in range(blk.pi.rank):
            for c in range(r, blk.pi.rank):
                lines.append(f"{r} {c} "
                             f"{_invariant_poly_text(blk.pi.entries[r][c], pres)}")
        lines.append("end-pi")
        lines.append("end-block")
    lines.append("end")
    return "\n".join(lines)


def certificate_from_text(text: str) -> Certificate:
    lines = [ln for ln in (s.strip() for s in text.splitlines())
             if ln and not ln.startswith("#")]
    if lines[0] != "symsos-certificate v1":
        raise ValueError("not a certificate file")
    i = 1
    head = {}
    while not lines[i].startswith(("presentation", "monomials")):
        tag, _, rest = lines[i].partition(" ")
        head[tag] = rest
        i += 1
    var_names = head["vars"].split()
    lam = Fraction(head["lambda"])
    mode = head["mode"]
    if mode == "plain":
        monos = []
        for tok in lines[i].split()[1:]:
            p = parse_polynomial(tok, var_names)
            [(m, c)] = list(p.terms.items())
            assert c == 1
            monos.append(m)
        i += 1
        size = int(lines[i].split()[1])
        i += 1
        gram = [[Fraction(0)] * size for _ in range(size)]
        while lines[i] != "end-gram":
            r, c, v = lines[i].split()
            gram[int(r)][int(c)] = gram[int(c)][int(r)] = Fraction(v)
            i += 1
        return Certificate("plain", head["group"], var_names, lam, exact=True,
                           monomials=tuple(monos), gram=gram,
                           objective=head.get("objective", "maximize-lambda"))
    nvars = int(lines[i].split()[1].split("=")[1])
    i += 1
    theta, eta = [], []
    while lines[i] != "end-presentation":
        tag, body = lines[i].split(None, 1)
        (theta if tag == "theta" else eta).append(parse_polynomial(body, var_names))
        i += 1
    i += 1
    pres = InvariantPresentation(nvars, theta, eta, [], [])
    tnames = pres.symbol_names()[: len(theta)]
    blocks = []
    while lines[i] != "end":
        assert lines[i].startswith("block ")
        label = lines[i].split()[1]
        i += 1
        rows = []
        while lines[i].startswith("row"):
            body = lines[i][4:].strip()
            if body == "empty":
                rows.append([])
            else:
                row = []
                for tok in body.split():
                    p = parse_polynomial(tok, tnames)
                    [(m, c)] = list(p.terms.items())
                    row.append(m)
                rows.append(row)
            i += 1
        size = int(lines[i].split()[1])
        i += 1
        gram = [[Fraction(0)] * size for _ in range(size)]
        while lines[i] != "end-gram":
            r, c, v = lines[i].split()
            gram[int(r)][int(c)] = gram[int(c)][int(r)] = Fraction(v)
            i += 1
        i += 1
        rank = int(lines[i].split()[1])
        i += 1
        entries = [[None] * rank for _ in range(rank)]
        while lines[i] != "end-pi":
            r, c, body = lines[i].split(None, 2)
            ip = _parse_invariant_poly(body, pres)
            entries[int(r)][int(c)] = entries[int(c)][int(r)] = ip
            i += 1
        i += 1
        assert lines[i] == "end-block"
        i += 1
        blocks.append(CertBlock(label, rows, gram, PiMatrix(label, entries)))
    return Certificate("invariant", head["group"], var_names, lam, exact=True,
                       pres=pres, blocks=blocks,
                       objective=head.get("objective", "maximize-lambda"))
