"""Line-oriented text formats: .fincat, .fun, .psh and .poset.

    category <name>
    object <id> ...
    morphism <id> : <src> -> <tgt>
    compose <g> . <f> = <h>

Identities are implicit and named id_<obj>; `#` starts a comment. Functors
map names (`object a |-> b`, `morphism f |-> g`) under `source`/`target`
headers, presheaves list `values a = x y` and `action f : x' |-> x`, posets
list `element ...` and `leq a b`. Serializers write the same grammar, so every
report witness can be fed back through the CLI.
"""
from dataclasses import dataclass, field

from aftlab.errors import ParseError
from aftlab.fincat import Category, Functor, label
from aftlab.posetlab import Poset
from aftlab.presheaf import Presheaf


@dataclass
class RawCategory:
    """Parsed but unvalidated category text."""

    name: str = "C"
    objects: list = field(default_factory=list)
    arrows: list = field(default_factory=list)         # (id, src, tgt)
    composites: dict = field(default_factory=dict)     # (g, f) -> h


def _lines(text):
    for line_no, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            yield line_no, line, body.split()


def parse_category(text):
    raw = RawCategory()
    objects, arrows = set(), {}
    for line_no, line, words in _lines(text):
        head = words[0]
        if head == "category" and len(words) == 2:
            raw.name = words[1]
        elif head == "object" and len(words) >= 2:
            for o in words[1:]:
                if o in objects:
                    raise ParseError(line_no, line, f"object {o} declared twice")
                objects.add(o)
                raw.objects.append(o)
        elif head == "morphism" and len(words) == 6 and words[2] == ":" and words[4] == "->":
            m, s, t = words[1], words[3], words[5]
            if m in arrows or m.startswith("id_") and m[3:] in objects:
                raise ParseError(line_no, line, f"morphism {m} declared twice")
            for o in (s, t):
                if o not in objects:
                    raise ParseError(line_no, line, f"unknown object {o}")
            arrows[m] = (s, t)
            raw.arrows.append((m, s, t))
        elif head == "compose" and len(words) == 6 and words[2] == "." and words[4] == "=":
            g, f, h = words[1], words[3], words[5]
            ends = {**{f"id_{o}": (o, o) for o in objects}, **arrows}
            for m in (g, f, h):
                if m not in ends:
                    raise ParseError(line_no, line, f"unknown morphism {m}")
            if ends[f][1] != ends[g][0]:
                raise ParseError(line_no, line, f"{g} . {f} is not composable")
            if (g, f) in raw.composites and raw.composites[(g, f)] != h:
                raise ParseError(line_no, line, f"{g} . {f} given two values")
            raw.composites[(g, f)] = h
        else:
            raise ParseError(line_no, line, "unrecognised line")
    return raw


def morphism_names(C):
    """Text name of every morphism: id_<obj> for identities, the flat label otherwise."""
    names = {m: label(m) for m in C.morphisms}
    for o, i in C.identity.items():
        names[i] = f"id_{label(o)}"
    return names


def serialize_category(C):
    names = morphism_names(C)
    lines = [f"category {C.name}"]
    if C.objects:
        lines.append("object " + " ".join(label(o) for o in C.objects))
    arrows = [m for m in C.morphisms if not C.is_identity(m)]
    for m in arrows:
        lines.append(f"morphism {names[m]} : {label(C.source[m])} -> {label(C.target[m])}")
    for g in arrows:
        for f in C.hom_into(C.source[g]):
            if not C.is_identity(f):
                lines.append(f"compose {names[g]} . {names[f]} = {names[C.compose(g, f)]}")
    return "\n".join(lines) + "\n"


def _resolve(C, where):
    objects = {label(o): o for o in C.objects}
    morphisms = {text: m for m, text in morphism_names(C).items()}

    def ob(token, line_no, line):
        if token not in objects:
            raise ParseError(line_no, line, f"{token} is not an object of {where} {C.name}")
        return objects[token]

    def mor(token, line_no, line):
        if token not in morphisms:
            raise ParseError(line_no, line, f"{token} is not a morphism of {where} {C.name}")
        return morphisms[token]

    return ob, mor


def parse_functor(text, source, target):
    """Functor between already validated categories; laws are checked."""
    name = "F"
    src_ob, src_mor = _resolve(source, "source")
    tgt_ob, tgt_mor = _resolve(target, "target")
    object_map, morphism_map = {}, {}
    for line_no, line, words in _lines(text):
        head = words[0]
        if head == "functor" and len(words) == 2:
            name = words[1]
        elif head in ("source", "target") and len(words) == 2:
            continue
        elif head in ("object", "morphism") and len(words) == 4 and words[2] == "|->":
            if head == "object":
                object_map[src_ob(words[1], line_no, line)] = tgt_ob(words[3], line_no, line)
            else:
                morphism_map[src_mor(words[1], line_no, line)] = tgt_mor(words[3], line_no, line)
        else:
            raise ParseError(line_no, line, "unrecognised line")
    missing = [label(o) for o in source.objects if o not in object_map]
    if missing:
        raise ParseError(0, "", f"objects {' '.join(missing)} have no image")
    missing = [label(m) for m in source.morphisms if m not in morphism_map and not source.is_identity(m)]
    if missing:
        raise ParseError(0, "", f"morphisms {' '.join(missing)} have no image")
    return Functor(source, target, object_map, morphism_map, name=name).check_laws()


def serialize_functor(F):
    names_a, names_b = morphism_names(F.source), morphism_names(F.target)
    lines = [f"functor {F.name}", f"source {F.source.name}", f"target {F.target.name}"]
    lines += [f"object {label(a)} |-> {label(b)}" for a, b in F.object_map.items()]
    lines += [
        f"morphism {names_a[m]} |-> {names_b[n]}"
        for m, n in F.morphism_map.items() if not F.source.is_identity(m)
    ]
    return "\n".join(lines) + "\n"


def parse_presheaf(text, base):
    name = "W"
    ob, mor = _resolve(base, "base")
    values, actions = {}, {}
    for line_no, line, words in _lines(text):
        head = words[0]
        if head == "presheaf" and len(words) == 4 and words[2] == "over":
            name = words[1]
        elif head == "values" and len(words) >= 3 and words[2] == "=":
            values[ob(words[1], line_no, line)] = tuple(words[3:])
        elif head == "action" and len(words) == 6 and words[2] == ":" and words[4] == "|->":
            m = mor(words[1], line_no, line)
            actions.setdefault(m, {})[words[3]] = words[5]
        else:
            raise ParseError(line_no, line, "unrecognised line")
    return Presheaf(base, values, actions, name=name).check_laws()


def serialize_presheaf(W):
    names = morphism_names(W.base)
    lines = [f"presheaf {W.name} over {W.base.name}"]
    lines += [f"values {label(a)} = " + " ".join(label(x) for x in W.values[a]) for a in W.base.objects]
    for m in W.base.morphisms:
        if W.base.is_identity(m):
            continue
        lines += [f"action {names[m]} : {label(x)} |-> {label(y)}" for x, y in W.actions[m].items()]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_poset(text):
    name, elements, pairs = "P", [], []
    for line_no, line, words in _lines(text):
        head = words[0]
        if head == "poset" and len(words) == 2:
            name = words[1]
        elif head == "element" and len(words) >= 2:
            elements.extend(words[1:])
        elif head == "leq" and len(words) == 3:
            for x in words[1:]:
                if x not in elements:
                    raise ParseError(line_no, line, f"unknown element {x}")
            pairs.append((words[1], words[2]))
        else:
            raise ParseError(line_no, line, "unrecognised line")
    return Poset.from_relation(elements, pairs, name=name)


def serialize_poset(P):
    lines = [f"poset {P.name}"]
    if P.elements:
        lines.append("element " + " ".join(label(x) for x in P.elements))
    lines += [f"leq {label(a)} {label(b)}" for a, b in P.covers()]
    return "\n".join(lines) + "\n"
