"""Command line front end.

Parses element expressions over a surface context, runs bracket and
cobracket computations, evaluates Fox pairings and quasi-derivations,
and drives the verification suites.  Exit codes: 0 success or verified,
1 verification failed, 2 usage or syntax error, 3 domain error.
"""

import argparse
import json
import re
import sys
from fractions import Fraction

from .brackets import BracketFast, CobracketFast, double_bracket
from .braids import dims, dims_csv, dk_algebra, dk_compose, lie_text
from .braids import verify_phi
from .core import TensorElt, cyclic_project, exp_truncated, lie_bracket
from .errors import GTError, NonGeneratorWord
from .surfaces import (Framing, SurfaceContext, conjugation_defect,
                       make_q_framing, make_rho_G, verify_bialgebra)


# ---------------------------------------------------------------------------
# expression parsing

class ParseError(ValueError):
    def __init__(self, message, offset):
        super().__init__("syntax error at offset %d: %s" % (offset, message))
        self.offset = offset


_NUM = re.compile(r"\d+(?:/\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _tokenize(src):
    tokens = []
    pos = 0
    while pos < len(src):
        ch = src[pos]
        if ch.isspace():
            pos += 1
        elif ch.isdigit():
            m = _NUM.match(src, pos)
            tokens.append(("num", m.group(), pos))
            pos = m.end()
        elif ch.isalpha() or ch == "_":
            m = _NAME.match(src, pos)
            tokens.append(("name", m.group(), pos))
            pos = m.end()
        elif ch in "+-*.(),":
            tokens.append((ch, ch, pos))
            pos += 1
        else:
            raise ParseError("unexpected character %r" % ch, pos)
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError("expected %r" % kind, tok[2])
        self.i += 1
        return tok

    def element(self):
        if self.peek()[0] == "-":
            self.take()
            node = ("neg", self.term())
        else:
            node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            node = ("add", node, ("neg", rhs) if op == "-" else rhs)
        return node

    def term(self):
        if self.peek()[0] == "num":
            tok = self.take()
            node = ("num", Fraction(tok[1]))
        else:
            node = self.factor()
        while self.peek()[0] in ("*", "."):
            self.take()
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        tok = self.peek()
        if tok[0] == "(":
            self.take()
            node = self.element()
            self.take(")")
            return node
        if tok[0] == "name":
            self.take()
            if tok[1] == "exp" and self.peek()[0] == "(":
                self.take()
                node = self.element()
                self.take(")")
                return ("exp", node)
            if tok[1] == "br" and self.peek()[0] == "(":
                self.take()
                a = self.element()
                self.take(",")
                b = self.element()
                self.take(")")
                return ("br", a, b)
            return ("gen", tok[1], tok[2])
        raise ParseError("expected a generator, number or '('", tok[2])


def _eval_node(node, ctx):
    kind = node[0]
    if kind == "num":
        return TensorElt.word(ctx, (), node[1])
    if kind == "gen":
        try:
            gi = ctx.alphabet.index(node[1])
        except NonGeneratorWord:
            raise NonGeneratorWord(
                "unknown generator %r at offset %d" % (node[1], node[2]))
        return TensorElt.word(ctx, (gi,))
    if kind == "neg":
        return -_eval_node(node[1], ctx)
    if kind == "add":
        return _eval_node(node[1], ctx) + _eval_node(node[2], ctx)
    if kind == "mul":
        return _eval_node(node[1], ctx) * _eval_node(node[2], ctx)
    if kind == "exp":
        return exp_truncated(_eval_node(node[1], ctx))
    return lie_bracket(_eval_node(node[1], ctx), _eval_node(node[2], ctx))


def parse_element(src, ctx):
    """Parse an element expression over the context's alphabet.

    element := ['-'] term (('+'|'-') term)*
    term    := rational | [rational ('*'|'.')] factor (('*'|'.') factor)*
    factor  := generator | '(' element ')' | 'exp(' element ')'
             | 'br(' element ',' element ')'

    '.' and '*' both multiply, so printed output parses back.
    """
    parser = _Parser(_tokenize(src))
    node = parser.element()
    tok = parser.peek()
    if tok[0] != "end":
        raise ParseError("unexpected %r" % tok[1], tok[2])
    return _eval_node(node, ctx)


# ---------------------------------------------------------------------------
# configuration

_DEFAULTS = {"genus": None, "boundaries": None, "max_degree": 4,
             "framing": "adapted", "format": "text", "check_degree": None,
             "strand": None, "arity": None, "unframed": False}


class UsageError(Exception):
    pass


def _merge_config(args):
    cfg = dict(_DEFAULTS)
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as e:
            raise UsageError("cannot read config %s: %s" % (path, e))
        for key in data:
            if key not in _DEFAULTS:
                raise UsageError("unknown config key %r" % key)
        cfg.update(data)
    for key in _DEFAULTS:
        val = getattr(args, key, None)
        if val is not None and val is not False:
            cfg[key] = val
    return cfg


def _framing(cfg):
    spec = cfg["framing"]
    if isinstance(spec, Framing):
        return spec
    if spec == "adapted":
        return Framing.adapted()
    if isinstance(spec, str) and spec.startswith("rot:"):
        try:
            rot = [int(s) for s in spec[4:].split(",") if s != ""]
        except ValueError:
            raise UsageError("bad rotation list %r" % spec)
        return Framing.rotations(rot)
    raise UsageError("framing must be 'adapted' or 'rot:r1,r2,...', got %r"
                     % spec)


def _surface(cfg):
    if cfg["genus"] is None or cfg["boundaries"] is None:
        raise UsageError("this command needs --genus and --boundaries")
    return SurfaceContext(cfg["genus"], cfg["boundaries"], cfg["max_degree"])


def _emit(cfg, payload, text):
    if cfg["format"] == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# verbs

def _cmd_bracket(args, cfg):
    ctx = _surface(cfg)
    a = parse_element(args.exprs[0], ctx)
    b = parse_element(args.exprs[1], ctx)
    fast = BracketFast(make_rho_G(ctx))
    out = fast.on_cyclic(cyclic_project(a), cyclic_project(b))
    _emit(cfg, out.to_json(), out.text())
    return 0


def _cmd_cobracket(args, cfg):
    ctx = _surface(cfg)
    a = parse_element(args.exprs[0], ctx)
    q = make_q_framing(ctx, _framing(cfg))
    out = CobracketFast(q).on_cyclic(cyclic_project(a))
    _emit(cfg, out.to_json(), out.text())
    return 0


def _cmd_doublebracket(args, cfg):
    ctx = _surface(cfg)
    a = parse_element(args.exprs[0], ctx)
    b = parse_element(args.exprs[1], ctx)
    out = double_bracket(make_rho_G(ctx), a, b)
    _emit(cfg, out.to_json(), out.text())
    return 0


def _cmd_fox_eval(args, cfg):
    ctx = _surface(cfg)
    a = parse_element(args.exprs[0], ctx)
    b = parse_element(args.exprs[1], ctx)
    out = make_rho_G(ctx)(a, b)
    _emit(cfg, out.to_json(), out.text())
    return 0


def _cmd_qder_eval(args, cfg):
    ctx = _surface(cfg)
    a = parse_element(args.exprs[0], ctx)
    out = make_q_framing(ctx, _framing(cfg))(a)
    _emit(cfg, out.to_json(), out.text())
    return 0


def _cmd_verify(args, cfg):
    what = args.what
    depth = cfg["check_degree"] or cfg["max_degree"]
    if what == "bialgebra":
        ctx = _surface(cfg)
        report = verify_bialgebra(ctx, _framing(cfg), depth)
        ok = all(r["status"] == "pass" for r in report)
        lines = ["%s: %s" % (r["check"], r["status"]) for r in report]
        lines.append("bialgebra up to degree %d: %s"
                     % (depth, "pass" if ok else "FAIL"))
        _emit(cfg, {"ok": ok, "checks": report}, "\n".join(lines))
        return 0 if ok else 1
    if cfg["genus"] is None or cfg["boundaries"] is None:
        raise UsageError("verify phi needs --genus and --boundaries")
    rep = verify_phi(cfg["genus"], cfg["boundaries"], depth)
    if rep.ok:
        text = ("kernel identification up to degree %d: pass\n"
                "dims: %s" % (depth, rep.source_dims))
    else:
        text = ("kernel identification up to degree %d: FAIL\n%r"
                % (depth, rep.witness))
    _emit(cfg, {"ok": rep.ok, "witness": rep.witness,
                "source_dims": rep.source_dims,
                "target_dims": rep.target_dims}, text)
    return 0 if rep.ok else 1


def _cmd_dk_dims(args, cfg):
    if cfg["boundaries"] is None:
        raise UsageError("dk-dims needs --boundaries (the strand count)")
    depth = cfg["check_degree"] or cfg["max_degree"]
    P = dk_algebra(cfg["genus"], cfg["boundaries"],
                   framed=not cfg["unframed"])
    table = dims(P, depth)
    _emit(cfg, {"algebra": P.name, "dims": table},
          "algebra %s\n%s" % (P.name, dims_csv(P, depth)))
    return 0


def _cmd_dk_compose(args, cfg):
    if cfg["boundaries"] is None:
        raise UsageError("dk-compose needs --boundaries (the strand count)")
    if cfg["strand"] is None or cfg["arity"] is None:
        raise UsageError("dk-compose needs --strand and --arity")
    P = dk_algebra(cfg["genus"], cfg["boundaries"],
                   framed=not cfg["unframed"])
    h = dk_compose(P, cfg["strand"], cfg["arity"])
    images = {g: lie_text(h.target.alphabet, h.images[g])
              for g in h.source.alphabet.names}
    text = "\n".join("%s -> %s" % (g, images[g])
                     for g in h.source.alphabet.names)
    _emit(cfg, {"source": h.source.name, "target": h.target.name,
                "images": images}, text)
    return 0


def _cmd_defect(args, cfg):
    ctx = _surface(cfg)
    x = parse_element(args.exprs[0], ctx)
    data = conjugation_defect(ctx, x, make_rho_G(ctx))
    text = "commutes: %s" % ("true" if data.commutes else "false")
    _emit(cfg, {"commutes": data.commutes}, text)
    return 0 if data.commutes else 1


_HANDLERS = {
    "bracket": _cmd_bracket,
    "cobracket": _cmd_cobracket,
    "doublebracket": _cmd_doublebracket,
    "fox-eval": _cmd_fox_eval,
    "qder-eval": _cmd_qder_eval,
    "verify": _cmd_verify,
    "dk-dims": _cmd_dk_dims,
    "dk-compose": _cmd_dk_compose,
    "defect": _cmd_defect,
}


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-g", "--genus", type=int, default=None)
    common.add_argument("-n", "--boundaries", type=int, default=None)
    common.add_argument("-N", "--max-degree", type=int, default=None,
                        dest="max_degree")
    common.add_argument("-D", "--check-degree", type=int, default=None,
                        dest="check_degree")
    common.add_argument("--framing", default=None)
    common.add_argument("--format", choices=["text", "json"], default=None)
    common.add_argument("--config", default=None)

    ap = argparse.ArgumentParser(
        prog="gt", description="graded loop algebra calculator")
    sub = ap.add_subparsers(dest="verb")
    for verb, arity in (("bracket", 2), ("cobracket", 1),
                        ("doublebracket", 2), ("fox-eval", 2),
                        ("qder-eval", 1), ("defect", 1)):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("exprs", nargs=arity, metavar="EXPR")
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("what", choices=["bialgebra", "phi"])
    p = sub.add_parser("verify-phi", parents=[common])
    p.set_defaults(what="phi")
    p = sub.add_parser("dk-dims", parents=[common])
    p.add_argument("--unframed", action="store_true", default=None)
    p = sub.add_parser("dk-compose", parents=[common])
    p.add_argument("-k", "--strand", type=int, default=None)
    p.add_argument("-m", "--arity", type=int, default=None)
    p.add_argument("--unframed", action="store_true", default=None)
    return ap


def run(argv):
    """Execute one command line; returns the exit code."""
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    if args.verb is None:
        ap.print_usage(sys.stderr)
        return 2
    verb = "verify" if args.verb == "verify-phi" else args.verb
    try:
        cfg = _merge_config(args)
        return _HANDLERS[verb](args, cfg)
    except (ParseError, UsageError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except GTError as e:
        print("error: %s" % e, file=sys.stderr)
        return 3


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
