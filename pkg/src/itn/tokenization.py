"""Asymmetric spoken/written tokenization and the fragment tag syntax.

The spoken side splits on whitespace. The written side is granular: alphabetic
runs stay whole, long digit runs (3+) split into single digits, short digit
groups (1-2 digits, e.g. a day of month "30") stay whole, and every other
non-space character is its own token. Word boundaries are kept as left/right
flags on each token; in serialized form they show up as underscores, which is
what lets the detokenizer decide where spaces go.

A *fragment* is one or more written tokens that realize a single spoken word.
Fragments serialize to tag strings: optional leading "_", escaped body with
"_" between interior tokens, optional trailing "_", optional movement suffix
("<", ">", "<<", ">>").
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum

SELF_TAG = "<SELF>"
DELETE_TAG = "<DELETE>"

# Digit runs shorter than this stay one token ("30" aligns as a unit; "2005"
# splits so each spoken word can claim its own digits).
_DIGIT_SPLIT_MIN = 3


class TagSyntaxError(ValueError):
    """Raised when a serialized tag string does not parse."""


class Movement(Enum):
    """How a fragment moves to restore written-domain order at realization."""

    NONE = ""
    SWAP_LEFT = "<"
    SWAP_RIGHT = ">"
    TO_GROUP_START = "<<"
    TO_GROUP_END = ">>"

    @property
    def suffix(self) -> str:
        return self.value


# Longest suffixes first so "<<" is not read as two SWAP_LEFTs.
_MOVEMENT_SUFFIXES = [
    ("<<", Movement.TO_GROUP_START),
    (">>", Movement.TO_GROUP_END),
    ("<", Movement.SWAP_LEFT),
    (">", Movement.SWAP_RIGHT),
]


@dataclass(frozen=True)
class WrittenToken:
    """A written-side token with word-boundary flags.

    The underscore is surface syntax only; `text` never contains one.
    """

    text: str
    left: bool = False
    right: bool = False


@dataclass(frozen=True)
class Fragment:
    """Written tokens realizing one spoken word, plus an optional movement.

    Canonical form: consecutive tokens inside a fragment are always separated
    by a word boundary (tokens that touch get concatenated at merge time), so
    interior flags are all True and only the outer flags vary.
    """

    tokens: tuple[WrittenToken, ...]
    movement: Movement = Movement.NONE

    @property
    def left(self) -> bool:
        return self.tokens[0].left

    @property
    def right(self) -> bool:
        return self.tokens[-1].right

    def surface(self) -> str:
        """Concatenated token texts, single space at interior boundaries."""
        return " ".join(t.text for t in self.tokens)

    def without_movement(self) -> "Fragment":
        if self.movement is Movement.NONE:
            return self
        return replace(self, movement=Movement.NONE)


def tokenize_spoken(text: str) -> list[str]:
    """Split on whitespace and lowercase; the spoken domain has no structure."""
    return text.lower().split()


def tokenize_written(text: str) -> list[WrittenToken]:
    """Tokenize written-domain text into granular boundary-flagged tokens."""
    tokens: list[WrittenToken] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and text[j].isalpha():
                j += 1
            pieces = [text[i:j]]
        elif ch.isdecimal():
            j = i + 1
            while j < n and text[j].isdecimal():
                j += 1
            run = text[i:j]
            pieces = list(run) if len(run) >= _DIGIT_SPLIT_MIN else [run]
        else:
            j = i + 1
            pieces = [ch]
        left_edge = i == 0 or text[i - 1].isspace()
        right_edge = j == n or text[j].isspace()
        last = len(pieces) - 1
        for k, piece in enumerate(pieces):
            tokens.append(
                WrittenToken(piece, left=left_edge and k == 0, right=right_edge and k == last)
            )
        i = j
    return tokens


_ESCAPE_CHARS = "\\_<>"
_UNESCAPE_RE = re.compile(r"\\u\{([0-9A-Fa-f]+)\}")


def escape_text(text: str) -> str:
    """Escape characters that collide with tag syntax as \\u{XX}."""
    if not any(c in text for c in _ESCAPE_CHARS):
        return text
    out = text.replace("\\", "\\u{5C}")
    for ch in "_<>":
        out = out.replace(ch, "\\u{%X}" % ord(ch))
    return out


def unescape_text(text: str) -> str:
    return _UNESCAPE_RE.sub(lambda m: chr(int(m.group(1), 16)), text)


def serialize_token(token: WrittenToken) -> str:
    """One token with its own boundary flags, e.g. '_jan_' or '_4'."""
    return ("_" if token.left else "") + escape_text(token.text) + ("_" if token.right else "")


def render_tokens(tokens: list[WrittenToken]) -> str:
    """Space-joined token sequence with one underscore per word boundary.

    Shared boundaries between adjacent tokens print once, attached to the left
    token: tokenize_written("jan 30,2005") renders "_jan_ 30 , 2 0 0 5_".
    """
    parts = []
    for k, token in enumerate(tokens):
        s = "_" if (k == 0 and token.left) else ""
        s += escape_text(token.text)
        nxt = tokens[k + 1] if k + 1 < len(tokens) else None
        if token.right or (nxt is not None and nxt.left):
            s += "_"
        parts.append(s)
    return " ".join(parts)


def serialize_fragment(fragment: Fragment) -> str:
    body = "_".join(escape_text(t.text) for t in fragment.tokens)
    s = ("_" if fragment.left else "") + body + ("_" if fragment.right else "")
    return s + fragment.movement.suffix


def serialize_tag(tag: "str | Fragment") -> str:
    """Serialize a per-word tag: a special marker or a fragment."""
    if tag == SELF_TAG or tag == DELETE_TAG:
        return tag
    return serialize_fragment(tag)


def parse_tag(text: str) -> "str | Fragment":
    """Parse a tag string into SELF_TAG, DELETE_TAG, or a Fragment."""
    if text == SELF_TAG or text == DELETE_TAG:
        return text
    if not text or " " in text:
        raise TagSyntaxError(f"not a tag: {text!r}")
    movement = Movement.NONE
    for suffix, mv in _MOVEMENT_SUFFIXES:
        if text.endswith(suffix):
            movement = mv
            text = text[: -len(suffix)]
            break
    left = text.startswith("_")
    if left:
        text = text[1:]
    right = text.endswith("_")
    if right:
        text = text[:-1]
    if not text:
        raise TagSyntaxError("tag has an empty body")
    segments = text.split("_")
    if any(not seg for seg in segments):
        raise TagSyntaxError(f"tag has an empty token: {text!r}")
    last = len(segments) - 1
    tokens = tuple(
        WrittenToken(
            unescape_text(seg),
            left=left if k == 0 else True,
            right=right if k == last else True,
        )
        for k, seg in enumerate(segments)
    )
    for token in tokens:
        if any(c.isspace() for c in token.text):
            raise TagSyntaxError(f"tag token contains whitespace: {token.text!r}")
    return Fragment(tokens, movement)


def detokenize(fragments: list[Fragment]) -> str:
    """Join fragments, emitting a space only at marked word boundaries.

    A space goes between two consecutive tokens iff the left one has a right
    boundary or the right one has a left boundary.
    """
    out: list[str] = []
    prev: WrittenToken | None = None
    for fragment in fragments:
        for token in fragment.tokens:
            if prev is not None and (prev.right or token.left):
                out.append(" ")
            out.append(token.text)
            prev = token
    return "".join(out).strip()


def detokenize_with_spans(
    items: list[tuple[int, Fragment]],
) -> tuple[str, dict[int, tuple[int, int]]]:
    """Detokenize (word_index, fragment) pairs, tracking each word's span.

    Spans are code-point offsets into the output text. A word index may map
    to several fragments only if the caller repeats it; normally 1:1.
    """
    out: list[str] = []
    pos = 0
    spans: dict[int, tuple[int, int]] = {}
    prev: WrittenToken | None = None
    for word_index, fragment in items:
        start = None
        for token in fragment.tokens:
            if prev is not None and (prev.right or token.left):
                out.append(" ")
                pos += 1
            if start is None:
                start = pos
            out.append(token.text)
            pos += len(token.text)
            prev = token
        spans[word_index] = (start if start is not None else pos, pos)
    return "".join(out), spans


def resolve_movement(fragments: list[Fragment]) -> tuple[list[Fragment], int]:
    """Reorder one group of fragments according to their movement markers.

    Group moves apply first (stable among multiple movers), then swaps in a
    single left-to-right scan. Every movement annotation is consumed, so a
    second pass is a no-op. Returns the new order and the count of swaps that
    fell off the edge of the group and were ignored.
    """
    ignored = 0
    starts = [f.without_movement() for f in fragments if f.movement is Movement.TO_GROUP_START]
    ends = [f.without_movement() for f in fragments if f.movement is Movement.TO_GROUP_END]
    middle = [
        f
        for f in fragments
        if f.movement not in (Movement.TO_GROUP_START, Movement.TO_GROUP_END)
    ]
    order = starts + middle + ends
    k = 0
    while k < len(order):
        fragment = order[k]
        if fragment.movement is Movement.SWAP_RIGHT:
            order[k] = fragment.without_movement()
            if k + 1 < len(order):
                order[k], order[k + 1] = order[k + 1], order[k]
            else:
                ignored += 1
            continue  # re-examine whatever landed at k
        if fragment.movement is Movement.SWAP_LEFT:
            order[k] = fragment.without_movement()
            if k > 0:
                order[k], order[k - 1] = order[k - 1], order[k]
            else:
                ignored += 1
            continue
        k += 1
    return order, ignored
