"""The handcrafted corpus (text files plus manifest.json under corpus/) and
msgpack corpus packs written by `gen-corpus`."""
import json
import logging
import os
from dataclasses import dataclass
from functools import lru_cache

import msgpack

from aftlab import config
from aftlab.errors import AftlabError, CorpusError
from aftlab.fincat import Category, Functor, validate_category
from aftlab.formats import parse_functor
from aftlab.presheaf import WeightClass

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusEntry:
    entry_id: str
    functor: Functor
    profiles: tuple
    expect: tuple     # (WeightClass, bool): expected phi-admissibility
    note: str = ""

    def expected(self, weight_class):
        if not isinstance(weight_class, WeightClass):
            weight_class = WeightClass.parse(weight_class)
        return dict(self.expect).get(weight_class)


def _read(path):
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


@lru_cache(maxsize=None)
def load_corpus(path=config.CORPUS_PATH):
    path = str(path)
    manifest_path = os.path.join(path, config.CORPUS_MANIFEST)
    try:
        manifest = json.loads(_read(manifest_path))
    except (OSError, ValueError) as exc:
        raise CorpusError(f"cannot read {manifest_path}: {exc}") from None
    categories = {}

    def category(filename):
        if filename not in categories:
            categories[filename] = validate_category(_read(os.path.join(path, filename)))
        return categories[filename]

    entries = []
    for item in manifest["entries"]:
        try:
            source, target = category(item["source"]), category(item["target"])
            functor = parse_functor(_read(os.path.join(path, item["functor"])), source, target)
        except AftlabError as exc:
            raise CorpusError(f"corpus entry {item['id']}: {exc}") from exc
        expect = tuple((WeightClass.parse(k), bool(v)) for k, v in sorted(item.get("expect", {}).items()))
        entries.append(CorpusEntry(item["id"], functor, tuple(item.get("profiles", ())), expect,
                                   item.get("note", "")))
    log.debug("loaded %d corpus entries from %s", len(entries), path)
    return tuple(entries)


#Serialization Functions:


# extension codes per object
EXT_CODE_CATEGORY = 1
EXT_CODE_FUNCTOR = 2
EXT_CODE_INSTANCE = 3


def _id(x):
    # msgpack turns tuples into lists; tag them so ids come back hashable
    if isinstance(x, tuple):
        return {"t": [_id(part) for part in x]}
    return x


def _unid(x):
    if isinstance(x, dict):
        return tuple(_unid(part) for part in x["t"])
    return x


def custom_default(obj):
    from aftlab.daft import TheoremInstance

    if isinstance(obj, Category):
        state = {
            "name": obj.name,
            "objects": [_id(o) for o in obj.objects],
            "morphisms": [[_id(m), _id(s), _id(t)] for m, s, t in obj.records()],
            "identity": [[_id(o), _id(obj.identity[o])] for o in obj.objects],
            "table": [[_id(g), _id(f), _id(h)] for (g, f), h in obj.table.items()],
        }
        return msgpack.ExtType(EXT_CODE_CATEGORY, msgpack.packb(state, use_bin_type=True))

    elif isinstance(obj, Functor):
        state = {
            "name": obj.name,
            "source": obj.source,
            "target": obj.target,
            "objects": [[_id(a), _id(b)] for a, b in obj.object_map.items()],
            "morphisms": [[_id(m), _id(n)] for m, n in obj.morphism_map.items()],
        }
        return msgpack.ExtType(EXT_CODE_FUNCTOR, msgpack.packb(state, use_bin_type=True, default=custom_default))

    elif isinstance(obj, TheoremInstance):
        state = {
            "id": obj.instance_id,
            "functor": obj.functor,
            "psi": obj.psi.value,
            "phi": obj.phi.value,
            "size_bound": obj.size_bound,
            "origin": obj.origin,
        }
        return msgpack.ExtType(EXT_CODE_INSTANCE, msgpack.packb(state, use_bin_type=True, default=custom_default))

    raise TypeError(f"cannot pack {type(obj).__name__}")


def ext_hook(code, data):
    from aftlab.daft import TheoremInstance

    state = msgpack.unpackb(data, raw=False, strict_map_key=False, ext_hook=ext_hook)
    if code == EXT_CODE_CATEGORY:
        return Category(
            [_unid(o) for o in state["objects"]],
            [tuple(_unid(x) for x in r) for r in state["morphisms"]],
            {_unid(o): _unid(i) for o, i in state["identity"]},
            {(_unid(g), _unid(f)): _unid(h) for g, f, h in state["table"]},
            name=state["name"],
        )

    elif code == EXT_CODE_FUNCTOR:
        return Functor(
            state["source"], state["target"],
            {_unid(a): _unid(b) for a, b in state["objects"]},
            {_unid(m): _unid(n) for m, n in state["morphisms"]},
            name=state["name"],
        )

    elif code == EXT_CODE_INSTANCE:
        return TheoremInstance(state["id"], state["functor"], WeightClass(state["psi"]),
                               WeightClass(state["phi"]), state["size_bound"], origin=state["origin"])

    return msgpack.ExtType(code, data)


def write_pack(path, instances, profile, seed):
    pack = {
        "schema": config.PACK_SCHEMA,
        "version": config.TOOL_VERSION,
        "profile": profile,
        "seed": seed,
        "instances": list(instances),
    }
    with open(path, "wb") as f:
        f.write(msgpack.packb(pack, use_bin_type=True, default=custom_default))
    log.info("wrote %d instances to %s", len(pack["instances"]), path)


def read_pack(path):
    """Returns (header, instances); header is the pack without its instances."""
    try:
        with open(path, "rb") as f:
            pack = msgpack.unpackb(f.read(), raw=False, ext_hook=ext_hook, strict_map_key=False)
    except (OSError, ValueError, msgpack.UnpackException) as exc:
        raise CorpusError(f"cannot read pack {path}: {exc}") from None
    if not isinstance(pack, dict) or pack.get("schema") != config.PACK_SCHEMA:
        raise CorpusError(f"{path} is not a {config.PACK_SCHEMA} pack")
    instances = pack.pop("instances")
    for instance in instances:
        instance.functor.check_laws()
    return pack, instances
