"""JSON documents for modules, extensions and pipeline inputs.

Document layout (all integers are plain JSON numbers):

  module          {"kind": "module", "p", "n", "precision", "generators":
                   [names], "relations": [[coeff-vector per generator]]}
                  where a coeff-vector has p^n entries, the t-th being
                  the coefficient of sigma^t, centered representatives.
  extension       {"kind": "extension", "p", "n", "precision",
                   "kernel_invariants": [e_1, ...], "action": t x t
                   matrix of the generator action on kernel coordinates,
                   "cocycle": d x d table of length-t coordinate vectors,
                   or the literal string "split"}
  pipeline-input  {"kind": "pipeline-input", "p", "n", "precision",
                   "module": module document (kind omitted), "rank",
                   "free_witness": [element, ...], "ideal_witness":
                   element} with elements written as one coeff-vector
                   per generator.
  diagram         the serialization of YakovlevDiagram.

Saving centers every stored residue (values above p^N / 2 are written
as negatives), so documents survive being reloaded at a higher
precision.  load(save(load(text))) equals load(text) structurally.

Reports: machine_report gives the canonical compact one-line JSON used
for byte-comparable output; text_report renders the same dictionary
for reading.
"""

from __future__ import annotations

import json

from .config import GroupConfig
from .constructions import ExtensionData, Theorem1Input, zero_extension
from .errors import ParseError
from .modules import ElementVector, PresentedModule
from .yakovlev import YakovlevDiagram

_KINDS = ("module", "extension", "pipeline-input", "diagram")


def _centered(value: int, modulus: int) -> int:
    value %= modulus
    return value - modulus if value > modulus // 2 else value


def parse_document(text: str) -> dict:
    """Parse JSON text into a document dict, with positions on failure."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    kind = doc.get("kind")
    if kind not in _KINDS:
        raise ParseError(f"unknown document kind {kind!r}; expected one of {_KINDS}")
    return doc


def _require(doc: dict, key: str, where: str = "document"):
    if key not in doc:
        raise ParseError(f"{where} is missing the {key!r} field")
    return doc[key]


def _config_from(doc: dict, precision: int | None = None, guard: int | None = None) -> GroupConfig:
    p = int(_require(doc, "p"))
    n = int(_require(doc, "n"))
    prec = precision if precision is not None else int(_require(doc, "precision"))
    kwargs = {} if guard is None else {"guard": guard}
    return GroupConfig(p, n, prec, **kwargs)


def _int_matrix(raw, rows: int, cols: int, where: str) -> list:
    if len(raw) != rows or any(len(r) != cols for r in raw):
        raise ParseError(f"{where} must be a {rows} x {cols} integer matrix")
    return [[int(v) for v in row] for row in raw]


# -- modules ---------------------------------------------------------------


def module_from_dict(doc: dict, precision: int | None = None, guard: int | None = None) -> PresentedModule:
    cfg = _config_from(doc, precision, guard)
    d = cfg.order
    names = [str(x) for x in _require(doc, "generators")]
    rows = []
    for i, row in enumerate(_require(doc, "relations")):
        if len(row) != len(names):
            raise ParseError(
                f"relation {i} has {len(row)} coefficient vectors for "
                f"{len(names)} generators"
            )
        coeffs = []
        for j, vec in enumerate(row):
            if len(vec) != d:
                raise ParseError(
                    f"relation {i}, generator {j}: coefficient vector "
                    f"needs {d} entries, found {len(vec)}"
                )
            coeffs.append(tuple(int(v) for v in vec))
        rows.append(tuple(coeffs))
    return PresentedModule(cfg, names, rows)


def module_to_dict(module: PresentedModule) -> dict:
    cfg = module.cfg
    return {
        "kind": "module",
        "p": cfg.p,
        "n": cfg.n,
        "precision": cfg.precision,
        "generators": list(module.gen_names),
        "relations": [
            [[_centered(v, cfg.modulus) for v in coeff.values] for coeff in row]
            for row in module.relations
        ],
    }


# -- elements --------------------------------------------------------------


def _element_from_lists(module: PresentedModule, raw, where: str) -> ElementVector:
    d = module.cfg.order
    k = len(module.gen_names)
    if len(raw) != k:
        raise ParseError(f"{where} needs one coefficient vector per generator ({k})")
    coeffs = []
    for j, vec in enumerate(raw):
        if len(vec) != d:
            raise ParseError(f"{where}, generator {j}: vector needs {d} entries")
        coeffs.append(tuple(int(v) for v in vec))
    return module.element(coeffs)


def _element_to_lists(elt: ElementVector) -> list:
    module = elt.module
    cfg = module.cfg
    d = cfg.order
    amb = (module._lift @ elt.column()) % cfg.modulus
    flat = [int(v) for v in amb.ravel()]
    return [
        [_centered(flat[g * d + t], cfg.modulus) for t in range(d)]
        for g in range(len(module.gen_names))
    ]


# -- extensions --------------------------------------------------------------


def extension_from_dict(doc: dict, precision: int | None = None, guard: int | None = None) -> ExtensionData:
    cfg = _config_from(doc, precision, guard)
    d = cfg.order
    invariants = [int(e) for e in _require(doc, "kernel_invariants")]
    if any(e < 0 for e in invariants):
        raise ParseError("kernel invariants must be nonnegative exponents")
    t = len(invariants)
    action = _int_matrix(_require(doc, "action"), t, t, "action")
    names = [f"k{i}" for i in range(t)]
    # sigma * k_j - sum_i action[i][j] k_i = 0, one relation per column j
    rows = []
    for j in range(t):
        row = []
        for i in range(t):
            vec = [0] * d
            if i == j:
                vec[1 % d] += 1
            vec[0] -= action[i][j]
            row.append(tuple(vec))
        rows.append(tuple(row))
    for i in range(t):
        row = [tuple([0] * d) for _ in range(t)]
        vec = [0] * d
        vec[0] = cfg.p ** invariants[i]
        row[i] = tuple(vec)
        rows.append(tuple(row))
    kernel = PresentedModule(cfg, names, rows)
    gens = kernel.generator_elements()
    raw = _require(doc, "cocycle")
    if raw == "split":
        return zero_extension(kernel)
    if len(raw) != d or any(len(r) != d for r in raw):
        raise ParseError(f"cocycle table must be {d} x {d}")
    table = []
    for a in range(d):
        row = []
        for b in range(d):
            vec = raw[a][b]
            if len(vec) != t:
                raise ParseError(
                    f"cocycle entry ({a}, {b}) needs {t} coordinates, found {len(vec)}"
                )
            elt = kernel.zero()
            for c, g in zip(vec, gens):
                elt = elt + int(c) * g
            row.append(elt)
        table.append(tuple(row))
    return ExtensionData(kernel, tuple(table))


def extension_to_dict(ext: ExtensionData) -> dict:
    kernel = ext.kernel
    cfg = kernel.cfg
    d = cfg.order
    # serialize through the kernel's coordinate model: one generator per
    # model coordinate, so elements are their own coordinate vectors
    exps = []
    for q in kernel.moduli:
        e = 0
        qq = int(q)
        while qq > 1:
            qq //= cfg.p
            e += 1
        exps.append(e)
    t = kernel.model_dim
    action = [[int(kernel.sigma_matrix[i, j]) for j in range(t)] for i in range(t)]
    if all(v.is_zero() for row in ext.cocycle for v in row):
        table = "split"
    else:
        table = [
            [[int(c) for c in ext.cocycle[a][b].coords] for b in range(d)]
            for a in range(d)
        ]
    return {
        "kind": "extension",
        "p": cfg.p,
        "n": cfg.n,
        "precision": cfg.precision,
        "kernel_invariants": exps,
        "action": action,
        "cocycle": table,
    }


# -- pipeline inputs ---------------------------------------------------------


def pipeline_input_from_dict(doc: dict, precision: int | None = None, guard: int | None = None) -> Theorem1Input:
    mod_doc = dict(_require(doc, "module"))
    for key in ("p", "n", "precision"):
        mod_doc.setdefault(key, doc.get(key))
    module = module_from_dict(mod_doc, precision, guard)
    rank = int(_require(doc, "rank"))
    free_raw = _require(doc, "free_witness")
    free = tuple(
        _element_from_lists(module, raw, f"free witness {i}")
        for i, raw in enumerate(free_raw)
    )
    ideal_w = _element_from_lists(module, _require(doc, "ideal_witness"), "ideal witness")
    return Theorem1Input(module=module, free_witness=free, ideal_witness=ideal_w, rank=rank)


def pipeline_input_to_dict(data: Theorem1Input) -> dict:
    mod_doc = module_to_dict(data.module)
    del mod_doc["kind"]
    return {
        "kind": "pipeline-input",
        "p": data.module.cfg.p,
        "n": data.module.cfg.n,
        "precision": data.module.cfg.precision,
        "module": mod_doc,
        "rank": data.rank,
        "free_witness": [_element_to_lists(w) for w in data.free_witness],
        "ideal_witness": _element_to_lists(data.ideal_witness),
    }


# -- dispatch ----------------------------------------------------------------


def load_text(text: str, precision: int | None = None, guard: int | None = None):
    """Parse and build the object a document describes."""
    doc = parse_document(text)
    kind = doc["kind"]
    if kind == "module":
        return module_from_dict(doc, precision, guard)
    if kind == "extension":
        return extension_from_dict(doc, precision, guard)
    if kind == "pipeline-input":
        return pipeline_input_from_dict(doc, precision, guard)
    return YakovlevDiagram.from_dict(doc)


def load_file(path, precision: int | None = None, guard: int | None = None):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return load_text(text, precision, guard)


def to_dict(obj) -> dict:
    if isinstance(obj, PresentedModule):
        return module_to_dict(obj)
    if isinstance(obj, ExtensionData):
        return extension_to_dict(obj)
    if isinstance(obj, Theorem1Input):
        return pipeline_input_to_dict(obj)
    if isinstance(obj, YakovlevDiagram):
        return obj.to_dict()
    raise TypeError(f"no document form for {type(obj).__name__}")


def save_text(obj) -> str:
    return json.dumps(to_dict(obj), indent=1) + "\n"


def save_file(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(save_text(obj))


# -- reports -----------------------------------------------------------------


def machine_report(doc: dict) -> str:
    """Canonical one-line JSON; byte-identical for equal dictionaries."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _text_lines(value, indent: int, out: list) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for key in value:
            sub = value[key]
            if isinstance(sub, (dict, list)) and sub:
                out.append(f"{pad}{key}:")
                _text_lines(sub, indent + 1, out)
            else:
                out.append(f"{pad}{key}: {sub}")
    elif isinstance(value, list):
        for sub in value:
            if isinstance(sub, (dict, list)):
                _text_lines(sub, indent, out)
                out.append("")
            else:
                out.append(f"{pad}- {sub}")
        while out and out[-1] == "":
            out.pop()
    else:
        out.append(f"{pad}{value}")


def text_report(doc: dict) -> str:
    """Readable rendition of a report dictionary."""
    out: list = []
    _text_lines(doc, 0, out)
    return "\n".join(out) + "\n"
