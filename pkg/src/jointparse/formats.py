"""Treebank file formats: bracketed constituent trees and CoNLL columns.

Both formats are treated purely as data carriers.  The bracketed reader
checks bracket balance over the whole input before parsing so unbalanced
input is reported with a byte offset rather than a confusing parse error.
The CoNLL reader consumes the ID, FORM, POSTAG, HEAD, and DEPREL columns
of tab-separated 10-column rows and skips multiword/empty-node rows (IDs
containing '-' or '.') and '#' comment lines.  Writers emit only the
consumed columns ('_' elsewhere) and reject field values that would not
survive a round-trip; tokens are otherwise stored verbatim (bracket
escapes such as -LRB- pass through untouched).
"""

from __future__ import annotations

import re
from collections.abc import Sequence

from .trees import ConstTree, DepTree, Sentence, TreeError

__all__ = [
    "FormatError",
    "read_ptb",
    "write_ptb",
    "read_conll",
    "write_conll",
]


class FormatError(ValueError):
    """Raised for malformed input text or unserializable values."""


def _text(data: str | bytes) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _byte_offset(text: str, pos: int) -> int:
    """Character position → byte offset in the UTF-8 encoding."""
    return len(text[:pos].encode("utf-8"))


# ---------------------------------------------------------------------------
# Bracketed trees
# ---------------------------------------------------------------------------

_PTB_TOKEN = re.compile(r"[()]|[^\s()]+")


def _check_balance(text: str) -> None:
    depth = 0
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise FormatError(f"unbalanced brackets at offset {_byte_offset(text, pos)}")
    if depth != 0:
        raise FormatError(f"unbalanced brackets at offset {_byte_offset(text, len(text))}")


def read_ptb(data: str | bytes) -> list[tuple[Sentence, ConstTree]]:
    """Parse bracketed trees, one sentence per top-level tree.

    Pre-terminals are nodes with a single bare-token child; their labels
    become the sentence's part-of-speech tags.  Errors carry byte offsets.
    """
    text = _text(data)
    _check_balance(text)
    tokens = [(m.group(), m.start()) for m in _PTB_TOKEN.finditer(text)]
    out: list[tuple[Sentence, ConstTree]] = []
    words: list[str] = []
    idx = 0

    def parse_node(at: int) -> tuple[ConstTree, int]:
        # tokens[at] is the opening bracket
        at += 1
        label, label_pos = tokens[at]
        if label in "()":
            raise FormatError(f"empty label at offset {_byte_offset(text, label_pos)}")
        at += 1
        kids: list[tuple[str, object, int]] = []
        while True:
            tok, pos = tokens[at]
            if tok == ")":
                at += 1
                break
            if tok == "(":
                child, at = parse_node(at)
                kids.append(("tree", child, pos))
            else:
                kids.append(("word", tok, pos))
                at += 1
        if len(kids) == 1 and kids[0][0] == "word":
            i = len(words)
            words.append(kids[0][1])
            return ConstTree(label, i, i + 1), at
        if not kids:
            raise FormatError(
                f"node '{label}' has no children at offset {_byte_offset(text, label_pos)}"
            )
        subtrees = []
        for kind, payload, pos in kids:
            if kind == "word":
                raise FormatError(
                    f"stray token '{payload}' at offset {_byte_offset(text, pos)}"
                )
            subtrees.append(payload)
        node = ConstTree(label, subtrees[0].left, subtrees[-1].right, tuple(subtrees))
        return node, at

    while idx < len(tokens):
        tok, pos = tokens[idx]
        if tok != "(":
            raise FormatError(f"stray token '{tok}' at offset {_byte_offset(text, pos)}")
        words = []
        tree, idx = parse_node(idx)
        tags = tuple(leaf.label for leaf in tree.iter_nodes() if leaf.is_leaf)
        out.append((Sentence(tuple(words), tags), tree))
    return out


def _writable(value: str, what: str) -> str:
    if not value or re.search(r"[\s()]", value):
        raise FormatError(f"{what} {value!r} cannot be written in bracketed format")
    return value


def _render(node: ConstTree, sentence: Sentence) -> str:
    if node.is_leaf:
        tag = _writable(node.label, "tag")
        word = _writable(sentence.tokens[node.left], "token")
        return f"({tag} {word})"
    inner = " ".join(_render(c, sentence) for c in node.children)
    return f"({_writable(node.label, 'label')} {inner})"


def write_ptb(pairs: Sequence[tuple[Sentence, ConstTree]]) -> str:
    """One bracketed tree per line; inverse of read_ptb on its own output."""
    lines = []
    for sentence, tree in pairs:
        if (tree.left, tree.right) != (0, sentence.n):
            raise FormatError(
                f"tree spans ({tree.left}, {tree.right}) but sentence has {sentence.n} tokens"
            )
        lines.append(_render(tree, sentence))
    return "".join(line + "\n" for line in lines)


# ---------------------------------------------------------------------------
# CoNLL columns
# ---------------------------------------------------------------------------


def read_conll(data: str | bytes) -> list[tuple[Sentence, DepTree]]:
    """Parse blank-line-separated blocks of 10-column rows.

    Errors name 1-based line numbers.  Word IDs must run 1..n within a
    block after multiword/empty-node rows are dropped.
    """
    text = _text(data)
    out: list[tuple[Sentence, DepTree]] = []
    rows: list[tuple[int, int, str, str, str, str]] = []
    seen: set[int] = set()

    def flush() -> None:
        if not rows:
            return
        n = len(rows)
        forms, tags, heads, rels = [], [], [], []
        for lineno, _, form, postag, head_str, deprel in rows:
            try:
                head = int(head_str)
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer HEAD {head_str!r}") from None
            if not 0 <= head <= n:
                raise FormatError(f"line {lineno}: HEAD {head} out of range for {n} words")
            forms.append(form)
            tags.append(postag)
            heads.append(head)
            rels.append(deprel)
        start = rows[0][0]
        try:
            dep = DepTree(tuple(heads), tuple(rels))
        except TreeError as exc:
            raise FormatError(f"line {start}: {exc}") from None
        out.append((Sentence(tuple(forms), tuple(tags)), dep))
        rows.clear()
        seen.clear()

    for lineno, line in enumerate(text.split("\n"), start=1):
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise FormatError(
                f"line {lineno}: expected 10 tab-separated columns, got {len(cols)}"
            )
        raw_id = cols[0]
        if "-" in raw_id or "." in raw_id:
            continue
        try:
            word_id = int(raw_id)
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer ID {raw_id!r}") from None
        if word_id in seen:
            raise FormatError(f"line {lineno}: duplicate ID {word_id}")
        if word_id != len(rows) + 1:
            raise FormatError(f"line {lineno}: expected ID {len(rows) + 1}, got {word_id}")
        seen.add(word_id)
        rows.append((lineno, word_id, cols[1], cols[4], cols[6], cols[7]))
    flush()
    return out


def _field(value: str, what: str) -> str:
    if not value or "\t" in value or "\n" in value or value != value.strip():
        raise FormatError(f"{what} {value!r} cannot be written as a CoNLL field")
    return value


def write_conll(pairs: Sequence[tuple[Sentence, DepTree]]) -> str:
    """Emit consumed columns (ID FORM _ _ POSTAG _ HEAD DEPREL _ _); '_' elsewhere."""
    blocks = []
    for sentence, dep in pairs:
        if sentence.n != dep.n:
            raise FormatError(
                f"sentence has {sentence.n} tokens but dependency tree has {dep.n} words"
            )
        lines = []
        for m in range(1, dep.n + 1):
            lines.append(
                "\t".join(
                    (
                        str(m),
                        _field(sentence.tokens[m - 1], "token"),
                        "_",
                        "_",
                        _field(sentence.pos_tags[m - 1], "tag"),
                        "_",
                        str(dep.heads[m - 1]),
                        _field(dep.labels[m - 1], "relation"),
                        "_",
                        "_",
                    )
                )
            )
        blocks.append("\n".join(lines))
    return "".join(block + "\n\n" for block in blocks)
