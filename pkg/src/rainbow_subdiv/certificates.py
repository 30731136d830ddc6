"""Path and subdivision certificates plus their JSON form."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = "1"


@dataclass(frozen=True)
class RainbowPath:
    vertices: tuple[int, ...]
    colours: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.colours) + 1:
            raise ValueError("a path with k edges needs k + 1 vertices")

    def __len__(self):
        return len(self.colours)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def reversed(self) -> RainbowPath:
        return RainbowPath(self.vertices[::-1], self.colours[::-1])

    def is_rainbow(self) -> bool:
        return len(set(self.colours)) == len(self.colours)

    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def replays_on(self, graph) -> bool:
        """Every consecutive pair is an edge of ``graph`` with the stated colour."""
        for a, b, c in zip(self.vertices, self.vertices[1:], self.colours):
            if graph.colour_of(a, b) != c:
                return False
        return True

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "colours": list(self.colours)}

    @classmethod
    def from_json(cls, obj) -> RainbowPath:
        return cls(tuple(int(v) for v in obj["vertices"]), tuple(int(c) for c in obj["colours"]))

    @classmethod
    def trivial(cls, v: int) -> RainbowPath:
        return cls((v,), ())


def shortcut_walk(vertices, colours) -> RainbowPath:
    """Drop closed sub-walks so every vertex appears once. The result uses a
    subset of the walk's edges, so a rainbow walk yields a rainbow path."""
    out_v: list[int] = []
    out_c: list[int] = []
    pos: dict[int, int] = {}
    for i, v in enumerate(vertices):
        if v in pos:
            cut = pos[v]
            for w in out_v[cut + 1:]:
                del pos[w]
            del out_v[cut + 1:]
            del out_c[cut:]
        else:
            if i > 0:
                out_c.append(colours[i - 1])
            pos[v] = len(out_v)
            out_v.append(v)
    return RainbowPath(tuple(out_v), tuple(out_c))


@dataclass
class SubdivisionCertificate:
    branch: tuple[int, ...]
    paths: dict[tuple[int, int], RainbowPath] = field(default_factory=dict)
    max_path_len: int | None = None

    @property
    def t(self) -> int:
        return len(self.branch)

    def colours(self) -> list[int]:
        return [c for key in sorted(self.paths) for c in self.paths[key].colours]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "t": self.t,
            "branch": list(self.branch),
            "max_path_len": self.max_path_len,
            "paths": [{"pair": [i, j], **self.paths[(i, j)].to_json()} for i, j in sorted(self.paths)],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, obj) -> SubdivisionCertificate:
        paths = {}
        for item in obj["paths"]:
            i, j = item["pair"]
            paths[(int(i), int(j))] = RainbowPath.from_json(item)
        return cls(tuple(int(b) for b in obj["branch"]), paths, obj.get("max_path_len"))

    @classmethod
    def loads(cls, text: str) -> SubdivisionCertificate:
        return cls.from_json(json.loads(text))
