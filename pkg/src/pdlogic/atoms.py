"""Subject/object pronoun atoms, the propositional letters of every descriptor logic."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PronounAtom:
    """A subject/object pronoun class such as she/her.

    The set of atoms is open-ended: any pair of nonempty ASCII-letter tokens
    is admissible. Atoms are normalized to lowercase at construction, so
    structural equality coincides with equality of canonical keys.
    """

    subject: str
    object: str

    def __post_init__(self):
        for part in (self.subject, self.object):
            if not part or not part.isascii() or not part.isalpha():
                raise ValueError(
                    f"pronoun token must be one or more ASCII letters, got {part!r}"
                )
        object.__setattr__(self, "subject", self.subject.lower())
        object.__setattr__(self, "object", self.object.lower())

    @property
    def key(self) -> str:
        return f"{self.subject}/{self.object}"

    def __str__(self) -> str:
        return self.key


def atom(key: str) -> PronounAtom:
    """Build an atom from its "subject/object" key."""
    subject, slash, obj = key.partition("/")
    if not slash:
        raise ValueError(f"atom key must look like subject/object, got {key!r}")
    return PronounAtom(subject, obj)
