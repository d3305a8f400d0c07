"""Plain-text document checking against a temporal descriptor.

The pipeline is deliberately thin: split the document into sentences, turn
every sentence bearing a tracked pronoun form into one utterance, and hand
the resulting trace to the monitor. No coreference resolution is attempted:
every pronoun in the document is attributed to the single referent, because a
wrong coreference heuristic would manufacture false accusations of
misgendering. This limitation is surfaced in the report output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import parsing, temporal
from .atoms import PronounAtom, atom
from .monitoring import Trace, Utterance, Verdict, expand_bounded, monitor

SINGLE_REFERENT_NOTE = (
    "note: every pronoun in the document is attributed to the referent; "
    "no coreference resolution is performed"
)


class LexiconError(Exception):
    pass


class ConfigError(Exception):
    pass


@dataclass
class Lexicon:
    """Map from lowercase surface token to the atoms it can realize."""

    entries: dict[str, frozenset[PronounAtom]]

    def __post_init__(self):
        for token in self.entries:
            if token != token.lower():
                raise LexiconError(f"lexicon tokens must be lowercase: {token!r}")
        for a in self.atoms():
            for form in (a.subject, a.object):
                if a not in self.entries.get(form, frozenset()):
                    raise LexiconError(
                        f"atom {a} is referenced but its form {form!r} is missing"
                    )

    def lookup(self, token: str) -> frozenset[PronounAtom]:
        return self.entries.get(token.lower(), frozenset())

    def atoms(self) -> frozenset[PronounAtom]:
        if not self.entries:
            return frozenset()
        return frozenset().union(*self.entries.values())

    def role(self, token: str, a: PronounAtom) -> str:
        """Whether the token is the subject form, object form, or another
        gendered form of the atom."""
        token = token.lower()
        if token == a.subject:
            return "subject"
        if token == a.object:
            return "object"
        return "other"


def parse_lexicon(text: str) -> Lexicon:
    """Lexicon file format: ``<surface-token> -> <atom> [<atom>...]`` per line,
    ``#`` comments."""
    entries: dict[str, set[PronounAtom]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        surface, arrow, atoms_text = line.partition("->")
        surface = surface.strip().lower()
        if not arrow or not surface:
            raise LexiconError(f"line {lineno}: expected '<token> -> <atom>...'")
        keys = atoms_text.split()
        if not keys:
            raise LexiconError(f"line {lineno}: entry for {surface!r} lists no atoms")
        entries.setdefault(surface, set()).update(atom(k) for k in keys)
    return Lexicon({k: frozenset(v) for k, v in entries.items()})


def default_lexicon() -> Lexicon:
    text = (resources.files("pdlogic") / "data" / "english_lexicon.txt").read_text(
        "utf-8"
    )
    return parse_lexicon(text)


@dataclass
class ReferentSpec:
    """A referent's names paired with their descriptor and the lexicon that
    grounds the descriptor's atoms in surface forms."""

    referent_names: frozenset[str]
    descriptor: temporal.TemporalFormula
    lexicon: Lexicon

    def __post_init__(self):
        if not self.referent_names:
            raise ConfigError("referent must have at least one name")
        missing = temporal.atoms(self.descriptor) - self.lexicon.atoms()
        if missing:
            keys = ", ".join(sorted(a.key for a in missing))
            raise ConfigError(f"descriptor atoms missing from lexicon: {keys}")


def parse_referent_spec(text: str, base_dir: Path | None = None) -> ReferentSpec:
    """Spec file format: ``referent:`` and ``descriptor:`` lines, optional
    ``lexicon: <path>`` (relative to the spec file)."""
    names: frozenset[str] | None = None
    descriptor = None
    lexicon = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, colon, value = line.partition(":")
        if not colon:
            raise ConfigError(f"line {lineno}: expected '<key>: <value>'")
        key = key.strip()
        value = value.strip()
        if key == "referent":
            names = frozenset(value.split())
        elif key == "descriptor":
            descriptor = parsing.parse_temporal(value)
        elif key == "lexicon":
            path = Path(value)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            lexicon = parse_lexicon(path.read_text("utf-8"))
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    if names is None:
        raise ConfigError("spec file has no 'referent:' line")
    if descriptor is None:
        raise ConfigError("spec file has no 'descriptor:' line")
    return ReferentSpec(names, descriptor, lexicon or default_lexicon())


def load_referent_spec(path: str | Path) -> ReferentSpec:
    path = Path(path)
    return parse_referent_spec(path.read_text("utf-8"), path.parent)


# --- segmentation ------------------------------------------------------------

_WORD = re.compile(r"[^\W\d_]+", re.UNICODE)


def _byte_offsets(text: str) -> list[int]:
    offsets = [0]
    for ch in text:
        offsets.append(offsets[-1] + len(ch.encode("utf-8")))
    return offsets


def segment(text: str) -> list[tuple[str, tuple[int, int]]]:
    """Sentences with byte spans. A sentence ends at '.', '!', or '?' followed
    by whitespace or end of input; the terminator belongs to the sentence."""
    offsets = _byte_offsets(text)
    sentences = []
    start = 0
    n = len(text)

    def close(begin: int, end: int):
        while begin < end and text[begin].isspace():
            begin += 1
        while end > begin and text[end - 1].isspace():
            end -= 1
        if begin < end:
            sentences.append((text[begin:end], (offsets[begin], offsets[end])))

    for i, ch in enumerate(text):
        if ch in ".!?" and (i + 1 == n or text[i + 1].isspace()):
            close(start, i + 1)
            start = i + 1
    close(start, n)
    return sentences


# --- trace extraction and checking -------------------------------------------


@dataclass
class Diagnostic:
    byte_span: tuple[int, int]
    sentence_index: int
    atoms_found: frozenset[PronounAtom]
    message: str


@dataclass
class Report:
    verdict: Verdict
    diagnostics: list[Diagnostic] = field(default_factory=list)
    trace: Trace = Trace(())


def _utterances(text: str, spec: ReferentSpec) -> list[tuple[Utterance, int]]:
    result = []
    for index, (sentence, span) in enumerate(segment(text)):
        found: set[PronounAtom] = set()
        for token in _WORD.findall(sentence):
            found |= spec.lexicon.lookup(token)
        if found:
            result.append((Utterance(frozenset(found), span), index))
    return result


def extract_trace(text: str, spec: ReferentSpec) -> Trace:
    """One utterance per sentence containing at least one tracked pronoun
    form; pronoun-free sentences produce no utterance."""
    return Trace(tuple(u for u, _ in _utterances(text, spec)))


def check_document(text: str, spec: ReferentSpec) -> Report:
    """Monitor the extracted trace against the descriptor; the verdict is
    always forced conclusive at end of document."""
    pairs = _utterances(text, spec)
    trace = Trace(tuple(u for u, _ in pairs))
    verdicts = monitor(expand_bounded(spec.descriptor), trace.utterances)
    final = verdicts[-1]
    diagnostics: list[Diagnostic] = []
    if final.status == "Violated":
        if final.witness_position is not None:
            utterance, sentence_index = pairs[final.witness_position]
            atoms_text = ", ".join(sorted(a.key for a in utterance.atoms))
            diagnostics.append(
                Diagnostic(
                    utterance.source_span,
                    sentence_index,
                    utterance.atoms,
                    f"descriptor violated here (pronouns found: {atoms_text})",
                )
            )
        else:
            doc_end = len(text.encode("utf-8"))
            diagnostics.append(
                Diagnostic(
                    (doc_end, doc_end),
                    len(segment(text)),
                    frozenset(),
                    "descriptor violated at end of document "
                    "(an outstanding obligation was never met)",
                )
            )
    return Report(final, diagnostics, trace)


# --- report rendering --------------------------------------------------------


def _line_column(text: str, byte_offset: int) -> tuple[int, int]:
    data = text.encode("utf-8")[:byte_offset].decode("utf-8", errors="replace")
    line = data.count("\n") + 1
    column = len(data) - (data.rfind("\n") + 1) + 1
    return line, column


def render_report(report: Report, text: str) -> str:
    """Human-readable report with line:column positions."""
    lines = [f"verdict: {report.verdict.status}"]
    for diag in report.diagnostics:
        line, column = _line_column(text, diag.byte_span[0])
        lines.append(f"  {line}:{column}: {diag.message}")
    lines.append(SINGLE_REFERENT_NOTE)
    return "\n".join(lines) + "\n"


def render_report_machine(report: Report, text: str) -> str:
    """One diagnostic per line: ``<byte_start>\\t<byte_end>\\t<verdict-or-note>\\t<atoms>``.

    A report with no diagnostics emits a single summary line covering the
    whole document.
    """
    lines = []
    for diag in report.diagnostics:
        atoms_text = " ".join(sorted(a.key for a in diag.atoms_found)) or "-"
        lines.append(
            f"{diag.byte_span[0]}\t{diag.byte_span[1]}\t{report.verdict.status}\t{atoms_text}"
        )
    if not lines:
        doc_end = len(text.encode("utf-8"))
        lines.append(f"0\t{doc_end}\t{report.verdict.status}\t-")
    return "\n".join(lines) + "\n"
