"""Text descriptors for spaces: "projective:4", "grassmannian:2:4", "D:5:1", "prod(a;b)"."""

from __future__ import annotations

from dataclasses import dataclass


class DescriptorError(ValueError):
    pass


ROOT_KINDS = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")

# family -> number of integer parameters
FAMILIES = {
    "projective": 1,
    "grassmannian": 2,
    "quadric-even": 1,
    "quadric-odd": 1,
    "og": 1,
    "sg": 1,
    "hirzebruch": 1,
}


@dataclass(frozen=True)
class SpaceDescriptor:
    family: str
    params: tuple[int, ...] = ()
    factors: tuple[SpaceDescriptor, ...] = ()

    def __str__(self) -> str:
        if self.family == "prod":
            return "prod(" + ";".join(str(f) for f in self.factors) + ")"
        return ":".join([self.family, *map(str, self.params)])


def split_top_level(body: str, sep: str = ";") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise DescriptorError(f"unbalanced brackets in {body!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise DescriptorError(f"unbalanced brackets in {body!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_space(text: str) -> SpaceDescriptor:
    text = text.strip()
    if text.startswith("prod(") and text.endswith(")"):
        factors = tuple(parse_space(p) for p in split_top_level(text[5:-1]))
        if len(factors) < 2:
            raise DescriptorError("a product needs at least two factors")
        return SpaceDescriptor("prod", (), factors)
    head, *rest = text.split(":")
    try:
        params = tuple(int(x) for x in rest)
    except ValueError:
        raise DescriptorError(f"non-integer parameter in {text!r}") from None
    if head in FAMILIES:
        if len(params) != FAMILIES[head]:
            raise DescriptorError(f"{head} takes {FAMILIES[head]} parameter(s), got {len(params)}")
        return SpaceDescriptor(head, params)
    if head.upper() in ROOT_KINDS:
        if len(params) != 2:
            raise DescriptorError(f"root descriptors have the form KIND:rank:node, got {text!r}")
        return SpaceDescriptor(head.upper(), params)
    raise DescriptorError(f"unknown space family {head!r}")
