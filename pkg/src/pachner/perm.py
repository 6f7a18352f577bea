"""Permutations of {0, 1, 2, 3}.

All 24 permutations are interned and numbered 0-23 in lexicographic order of
their image tuples, so code 0 is the identity.  The module-level tables are
what the hot paths use; :class:`Perm4` is the public face of the same data.
"""

from __future__ import annotations

from itertools import permutations

PERMS: tuple[tuple[int, int, int, int], ...] = tuple(permutations(range(4)))
CODE: dict[tuple[int, ...], int] = {p: i for i, p in enumerate(PERMS)}

# INVERSE[a] is the code of a^-1; COMPOSE[a][b] is the code of a o b
# (apply b first).
INVERSE: tuple[int, ...] = tuple(
    CODE[tuple(p.index(i) for i in range(4))] for p in PERMS
)
COMPOSE: tuple[tuple[int, ...], ...] = tuple(
    tuple(CODE[tuple(a[b[i]] for i in range(4))] for b in PERMS) for a in PERMS
)
IDENTITY = 0


def _sign(p: tuple[int, ...]) -> int:
    inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j])
    return -1 if inversions % 2 else 1


SIGN: tuple[int, ...] = tuple(_sign(p) for p in PERMS)


def transposition(a: int, b: int) -> int:
    """Code of the permutation swapping ``a`` and ``b``."""
    images = [0, 1, 2, 3]
    images[a], images[b] = b, a
    return CODE[tuple(images)]


def from_images(*images: int) -> int:
    """Code of the permutation sending i to ``images[i]``."""
    try:
        return CODE[tuple(images)]
    except KeyError:
        raise ValueError(f"not a permutation of 0..3: {images}") from None


class Perm4:
    """An immutable permutation of {0, 1, 2, 3}.

    Instances are interned: ``Perm4((1, 0, 2, 3)) is Perm4.from_code(6)``.
    Composition follows function notation, ``(p * q)[i] == p[q[i]]``.
    """

    __slots__ = ("code",)
    _interned: list[Perm4] = []

    def __new__(cls, images=(0, 1, 2, 3)):
        return cls.from_code(from_images(*images))

    @classmethod
    def from_code(cls, code: int) -> Perm4:
        if not 0 <= code < 24:
            raise ValueError(f"permutation code out of range: {code}")
        return cls._interned[code]

    @classmethod
    def identity(cls) -> Perm4:
        return cls._interned[IDENTITY]

    @property
    def images(self) -> tuple[int, int, int, int]:
        return PERMS[self.code]

    def __getitem__(self, i: int) -> int:
        return PERMS[self.code][i]

    def __mul__(self, other: Perm4) -> Perm4:
        return Perm4._interned[COMPOSE[self.code][other.code]]

    def inverse(self) -> Perm4:
        return Perm4._interned[INVERSE[self.code]]

    def sign(self) -> int:
        return SIGN[self.code]

    def __iter__(self):
        return iter(PERMS[self.code])

    def __reduce__(self):
        return (Perm4.from_code, (self.code,))

    def __repr__(self) -> str:
        return "Perm4(%s)" % "".join(map(str, self.images))

    def __str__(self) -> str:
        return "".join(map(str, self.images))


for _code in range(24):
    _p = object.__new__(Perm4)
    _p.code = _code
    Perm4._interned.append(_p)
del _code, _p
