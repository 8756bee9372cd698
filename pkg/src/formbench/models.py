"""Built-in structure models and the model file format.

Model files are JSON documents with four sections: scalar variable
declarations, generator records, differential records and the volume
monomial.  ``load_model`` validates the structure equations on load.
"""

from __future__ import annotations

import json
from typing import NamedTuple

from .dga import StructureModel
from .errors import ParseError
from .exterior import Coframe, Generator
from .expressions import parse_scalar
from .scalars import GaussianRational, VariableTable


def _variable_declarations(parameters):
    decls = [("V", "V")]
    for item in parameters:
        if isinstance(item, str):
            decls.append((item, item))
        else:
            decls.append(tuple(item))
    return decls


def torus(dim, parameters=()):
    """The invariant-form model of a complex torus of dimension ``dim``:
    generators x1..x{dim} and their conjugates, zero differential."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    table = VariableTable(_variable_declarations(parameters))
    holo = [Generator(f"x{i}", (1, 0), i) for i in range(1, dim + 1)]
    anti = [Generator(f"xb{i}", (0, 1), i) for i in range(1, dim + 1)]
    coframe = Coframe(
        holo + anti,
        table,
        conjugates={f"x{i}": f"xb{i}" for i in range(1, dim + 1)},
        volume=[g.name for g in holo + anti],
    )
    return StructureModel(coframe, {})


def kodaira():
    """The standard Kodaira surface model: dw2 = w1^wb1 and its conjugate
    equation; carries the formal symplectic scale mu."""
    table = VariableTable([("V", "V"), ("mu", "mub")])
    coframe = Coframe(
        [
            Generator("w1", (1, 0), 1),
            Generator("w2", (1, 0), 2),
            Generator("wb1", (0, 1), 1),
            Generator("wb2", (0, 1), 2),
        ],
        table,
        conjugates={"w1": "wb1", "w2": "wb2"},
        volume=["w1", "w2", "wb1", "wb2"],
    )
    differentials = {
        "w2": coframe.form({("w1", "wb1"): 1}),
        "wb2": coframe.form({("w1", "wb1"): -1}),
    }
    return StructureModel(coframe, differentials)


def kodaira_sigma(model):
    """The symplectic form mu * w1^w2 of the Kodaira model."""
    return model.coframe.monomial_form(
        ("w1", "w2"), model.table.variable("mu")
    )


class NakamuraFamily(NamedTuple):
    model: StructureModel
    sigma: object


def nakamura(t):
    """The deformed Nakamura product model at an exact parameter with
    |t| < 1; the returned form is the closed symplectic form of the fibre.

    The (0,1) coframe of this family is not the conjugate of the (1,0)
    coframe, so no conjugation pairing is declared.
    """
    t = GaussianRational.of(t)
    norm = t.norm()
    if norm >= 1:
        raise ValueError("the parameter must satisfy |t| < 1")
    a = GaussianRational(1 / (1 - norm))
    at = a * t
    table = VariableTable([("V", "V")])
    holo = [Generator(f"phi{i}", (1, 0), i) for i in range(1, 5)]
    anti = [Generator(f"om{i}", (0, 1), i) for i in range(1, 5)]
    coframe = Coframe(
        holo + anti, table, conjugates=None,
        volume=[g.name for g in holo + anti],
    )
    differentials = {
        "phi2": coframe.form({("phi1", "phi2"): -a, ("phi2", "om1"): at}),
        "phi3": coframe.form({("phi1", "phi3"): a, ("phi3", "om1"): -at}),
        "om2": coframe.form({("phi1", "om2"): -a, ("om1", "om2"): -at}),
        "om3": coframe.form({("phi1", "om3"): a, ("om1", "om3"): at}),
    }
    model = StructureModel(coframe, differentials)
    sigma = coframe.form({("phi1", "phi4"): 1, ("phi2", "phi3"): 1})
    return NakamuraFamily(model, sigma)


class TorusDeformation(NamedTuple):
    model: StructureModel
    sigma: object
    sigma_t: object


def torus4_deformed():
    """The four-torus family: the deformed coframe w_i is substituted into
    sigma_t = w1^w2 + w3^w4 + t3*w1^w3 + t4*w2^w4 and expanded over the
    central fibre's coframe.  The parameters t1..t4 stay formal."""
    model = torus(4, parameters=[(f"t{i}", f"tb{i}") for i in range(1, 5)])
    cf = model.coframe
    table = cf.table
    gen = cf.generator_form
    t = {i: table.variable(f"t{i}") for i in range(1, 5)}
    w1 = gen("x1") + gen("xb3").scaled(t[1])
    w2 = gen("x2") + gen("xb4").scaled(t[2])
    w3 = gen("x3") + gen("xb1").scaled(t[1])
    w4 = gen("x4") + gen("xb2").scaled(t[2])
    sigma_t = (
        w1.wedge(w2) + w3.wedge(w4)
        + w1.wedge(w3).scaled(t[3]) + w2.wedge(w4).scaled(t[4])
    )
    sigma = cf.form({("x1", "x2"): 1, ("x3", "x4"): 1})
    return TorusDeformation(model, sigma, sigma_t)


BUILTIN_MODELS = {
    "torus2": lambda: torus(2),
    "torus4": lambda: torus(4),
    "kodaira": kodaira,
}


# -- model files ---------------------------------------------------------------


def model_from_dict(document):
    if not isinstance(document, dict):
        raise ParseError("model document must be a JSON object")
    try:
        variables = [
            (record["name"], record.get("conjugate"))
            for record in document.get("variables", [])
        ]
    except (TypeError, KeyError) as exc:
        raise ParseError("each variable needs a name", field="variables") from exc
    declarations = [
        (name, conj) if conj is not None else name for name, conj in variables
    ]
    try:
        table = VariableTable(declarations)
    except ValueError as exc:
        raise ParseError(str(exc), field="variables") from exc

    generators = []
    pairing = {}
    counters = {(1, 0): 0, (0, 1): 0}
    records = document.get("generators", [])
    if not records:
        raise ParseError("at least one generator is required", field="generators")
    for record in records:
        try:
            name = record["name"]
            bidegree = tuple(record["bidegree"])
        except (TypeError, KeyError) as exc:
            raise ParseError(
                "generator records need name and bidegree", field="generators"
            ) from exc
        if bidegree not in ((1, 0), (0, 1)):
            raise ParseError(
                f"{name}: bidegree must be [1,0] or [0,1]", field="generators"
            )
        counters[bidegree] += 1
        generators.append(Generator(name, bidegree, counters[bidegree]))
        mate = record.get("conjugate")
        if mate is not None:
            for a, b in ((name, mate), (mate, name)):
                if pairing.setdefault(a, b) != b:
                    raise ParseError(
                        f"inconsistent conjugate pairing at {a}",
                        field="generators",
                    )
    names = {g.name for g in generators}
    for name, mate in pairing.items():
        if mate not in names:
            raise ParseError(f"unknown conjugate {mate!r}", field="generators")
    # keep only one direction; Coframe symmetrizes
    one_way = {}
    seen = set()
    for name, mate in pairing.items():
        if name not in seen and mate not in seen:
            one_way[name] = mate
            seen.update((name, mate))

    volume = document.get("volume")
    try:
        coframe = Coframe(generators, table, conjugates=one_way, volume=volume)
    except (ValueError, KeyError) as exc:
        raise ParseError(str(exc)) from exc

    differentials = {}
    for record in document.get("differentials", []):
        try:
            target = record["generator"]
            terms = record["terms"]
        except (TypeError, KeyError) as exc:
            raise ParseError(
                "differential records need generator and terms",
                field="differentials",
            ) from exc
        if target not in coframe.position:
            raise ParseError(
                f"undeclared generator {target!r}", field="differentials"
            )
        total = coframe.zero_form()
        for term in terms:
            try:
                coefficient = parse_scalar(str(term["coefficient"]), table)
                monomial = term["monomial"]
            except (TypeError, KeyError) as exc:
                raise ParseError(
                    "terms need coefficient and monomial", field="differentials"
                ) from exc
            for gen_name in monomial:
                if gen_name not in coframe.position:
                    raise ParseError(
                        f"undeclared generator {gen_name!r} in d({target})",
                        field="differentials",
                    )
            total = total + coframe.monomial_form(monomial, coefficient)
        differentials[target] = total
    return StructureModel(coframe, differentials)


def load_model(path):
    """Load and validate a model file; raises ParseError on malformed input
    and IntegrabilityError on bad structure equations."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return model_from_dict(document)


def model_to_dict(model):
    cf = model.coframe
    table = cf.table
    variables = []
    emitted = set()
    for name in table.names:
        if name in emitted:
            continue
        mate = table.conjugate_of(name)
        variables.append({"name": name, "conjugate": mate})
        emitted.add(name)
        if mate is not None:
            emitted.add(mate)
    generators = []
    for pos, gen in enumerate(cf.generators):
        mate = cf.conjugate_position[pos]
        generators.append(
            {
                "name": gen.name,
                "bidegree": list(gen.bidegree),
                "conjugate": None if mate is None else cf.generators[mate].name,
            }
        )
    differentials = []
    for gen in cf.generators:
        form = model.differential_of(gen.name)
        if not form:
            continue
        terms = [
            {
                "coefficient": str(coeff),
                "monomial": [cf.generators[p].name for p in mon],
            }
            for mon, coeff in sorted(form.terms.items())
        ]
        differentials.append({"generator": gen.name, "terms": terms})
    volume = None
    if cf.volume_monomial is not None:
        volume = [cf.generators[p].name for p in cf.volume_monomial]
        if cf.volume_sign < 0:
            volume[0], volume[1] = volume[1], volume[0]
    return {
        "variables": variables,
        "generators": generators,
        "differentials": differentials,
        "volume": volume,
    }


def save_model(model, path):
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(model_to_dict(model), handle, indent=2, sort_keys=True)
        handle.write("\n")
