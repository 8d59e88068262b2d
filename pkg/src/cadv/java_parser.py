"""Island parser for Java sources.

Extracts only what annotation analysis needs: the package declaration,
imports, type declaration skeletons, annotatable member signatures, and
annotation occurrences (with argument counts and line spans).  Method and
initializer bodies are brace-matched and skipped, so local variables,
lambdas, and anonymous classes never contribute.  Comments and string/char
literals are dropped during tokenization and can never produce annotations.

Type-use annotations (inside generics, on array dimensions, in extends
clauses) are deliberately not extracted; only declaration-site annotations
on types, methods, constructors, fields, and parameters are recorded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseGaveUp, RootNotFound, UnreadableFile

MODIFIERS = frozenset({
    "public", "protected", "private", "static", "final", "abstract",
    "default", "synchronized", "native", "transient", "volatile",
    "strictfp", "sealed",
})

TYPE_KEYWORDS = frozenset({"class", "interface", "enum", "record"})


# ---------------------------------------------------------------------------
# data types

@dataclass(frozen=True)
class ImportDecl:
    path: str
    is_wildcard: bool
    is_static: bool


@dataclass(frozen=True)
class RawAnnotation:
    """One annotation occurrence as written in source.

    ``simple_name`` keeps the identifier exactly as written, which may be
    dotted (``@javax.persistence.Entity``).  ``children`` holds annotations
    nested inside this one's argument list; their spans lie within ours.
    """

    simple_name: str
    argument_count: int
    start_line: int
    end_line: int
    nesting_depth: int
    children: tuple["RawAnnotation", ...] = ()

    @property
    def last_segment(self) -> str:
        return self.simple_name.rsplit(".", 1)[-1]


@dataclass(frozen=True)
class RawElement:
    """An annotated declaration site inside a type.

    Elements are only materialized for declarations that carry at least one
    annotation; kind ``type`` owns the annotations written on the type
    declaration itself.
    """

    kind: str  # type | method | field | constructor | parameter
    name: str
    annotations: tuple[RawAnnotation, ...]
    line: int


@dataclass(frozen=True)
class RawType:
    kind: str  # class | interface | enum | record | annotation
    name: str
    start_line: int
    end_line: int
    elements: tuple[RawElement, ...]
    nested: tuple["RawType", ...]


@dataclass(frozen=True)
class SourceFile:
    path: str
    package_name: str  # "" means the default package
    imports: tuple[ImportDecl, ...]
    types: tuple[RawType, ...]
    line_count: int


@dataclass(frozen=True)
class SkippedFile:
    path: str
    reason: str


@dataclass(frozen=True)
class ScanResult:
    files: tuple[SourceFile, ...]
    skipped: tuple[SkippedFile, ...]


# ---------------------------------------------------------------------------
# tokenizer

@dataclass(frozen=True)
class _Token:
    kind: str  # ident | number | string | char | punct
    text: str
    line: int


def _scan_quoted(text: str, i: int, quote: str) -> int:
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\\":
            i += 2
        elif ch == quote:
            return i + 1
        elif ch == "\n":
            return i  # unterminated literal; stop at end of line
        else:
            i += 1
    return n


def _scan_text_block(text: str, i: int) -> int:
    n = len(text)
    while i < n:
        if text[i] == "\\":
            i += 2
            continue
        if text.startswith('"""', i):
            return i + 3
        i += 1
    return n


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n, line = 0, len(text), 1
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
            continue
        if ch in " \t\r\f\x0b":
            i += 1
            continue
        if ch == "/" and i + 1 < n:
            nxt = text[i + 1]
            if nxt == "/":
                j = text.find("\n", i)
                i = n if j < 0 else j
                continue
            if nxt == "*":
                j = text.find("*/", i + 2)
                if j < 0:
                    line += text.count("\n", i)
                    i = n
                else:
                    line += text.count("\n", i, j)
                    i = j + 2
                continue
        if ch == '"':
            j = _scan_text_block(text, i + 3) if text.startswith('"""', i) else _scan_quoted(text, i + 1, '"')
            tokens.append(_Token("string", '""', line))
            line += text.count("\n", i, j)
            i = j
            continue
        if ch == "'":
            j = _scan_quoted(text, i + 1, "'")
            tokens.append(_Token("char", "''", line))
            line += text.count("\n", i, j)
            i = j
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] in "._"):
                j += 1
            tokens.append(_Token("number", text[i:j], line))
            i = j
            continue
        if ch.isalpha() or ch in "_$":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] in "_$"):
                j += 1
            tokens.append(_Token("ident", text[i:j], line))
            i = j
            continue
        tokens.append(_Token("punct", ch, line))
        i += 1
    return tokens


class _Cursor:
    __slots__ = ("toks", "i", "n")

    def __init__(self, toks: list[_Token]):
        self.toks = toks
        self.i = 0
        self.n = len(toks)

    def peek(self, k: int = 0) -> _Token | None:
        j = self.i + k
        return self.toks[j] if j < self.n else None

    def next(self) -> _Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def back(self) -> None:
        self.i -= 1

    def at_end(self) -> bool:
        return self.i >= self.n


def _is(tok: _Token | None, text: str) -> bool:
    return tok is not None and tok.text == text


def _is_ident(tok: _Token | None, text: str | None = None) -> bool:
    if tok is None or tok.kind != "ident":
        return False
    return text is None or tok.text == text


# ---------------------------------------------------------------------------
# low-level skips

def _skip_group(cur: _Cursor, open_text: str, close_text: str) -> _Token:
    """Consume a balanced token group, returning its closing token."""
    t = cur.next()  # opening token
    depth = 1
    while depth:
        t = cur.peek()
        if t is None:
            raise ParseGaveUp(f"unbalanced '{open_text}' at end of file")
        cur.next()
        if t.text == open_text:
            depth += 1
        elif t.text == close_text:
            depth -= 1
    return t


def _skip_until_semi(cur: _Cursor) -> None:
    while not cur.at_end():
        if cur.next().text == ";":
            return


def _skip_statement(cur: _Cursor) -> None:
    """Consume through the ';' that ends a field declaration.

    Parens, braces, and brackets nest (initializers may hold anonymous
    classes whose bodies contain semicolons).  A '}' at depth zero means the
    terminating ';' was missing; it is pushed back so the caller can close
    the enclosing body.
    """
    depth = 0
    while True:
        t = cur.peek()
        if t is None:
            raise ParseGaveUp("unterminated declaration")
        cur.next()
        if t.text in "({[":
            depth += 1
        elif t.text in ")}]":
            if depth == 0 and t.text == "}":
                cur.back()
                return
            depth -= 1
        elif t.text == ";" and depth == 0:
            return


def _skip_type_use_annotation(cur: _Cursor) -> None:
    """Skip an '@Name(...)' that sits in a type-use position."""
    cur.next()  # '@'
    if not _is_ident(cur.peek()):
        return
    cur.next()
    while _is(cur.peek(), ".") and _is_ident(cur.peek(1)):
        cur.next()
        cur.next()
    if _is(cur.peek(), "("):
        _skip_group(cur, "(", ")")


# ---------------------------------------------------------------------------
# annotations

def _parse_annotation(cur: _Cursor, depth: int) -> RawAnnotation | None:
    at = cur.next()  # '@'
    t = cur.peek()
    if not _is_ident(t) or t.text == "interface":
        cur.back()
        return None
    name_tok = cur.next()
    parts = [name_tok.text]
    end_line = name_tok.line
    while _is(cur.peek(), ".") and _is_ident(cur.peek(1)):
        cur.next()
        seg = cur.next()
        parts.append(seg.text)
        end_line = seg.line
    argc = 0
    children: list[RawAnnotation] = []
    if _is(cur.peek(), "("):
        cur.next()
        pdepth, bdepth = 1, 0
        commas, saw_content = 0, False
        while True:
            t = cur.peek()
            if t is None:
                raise ParseGaveUp(f"unterminated annotation @{'.'.join(parts)}")
            if t.text == "@" and t.kind == "punct" and _is_ident(cur.peek(1)):
                child = _parse_annotation(cur, depth + 1)
                if child is not None:
                    children.append(child)
                    saw_content = True
                    continue
            cur.next()
            if t.text == "(":
                pdepth += 1
            elif t.text == ")":
                pdepth -= 1
                if pdepth == 0:
                    end_line = t.line
                    break
            elif t.text == "{":
                bdepth += 1
            elif t.text == "}":
                bdepth = max(0, bdepth - 1)
            elif t.text == "," and pdepth == 1 and bdepth == 0:
                commas += 1
            saw_content = True
        argc = commas + 1 if saw_content else 0
    return RawAnnotation(
        simple_name=".".join(parts),
        argument_count=argc,
        start_line=at.line,
        end_line=end_line,
        nesting_depth=depth,
        children=tuple(children),
    )


def _collect_prelude(cur: _Cursor) -> list[RawAnnotation]:
    """Consume leading annotations and modifiers of a declaration."""
    anns: list[RawAnnotation] = []
    while True:
        t = cur.peek()
        if t is None:
            return anns
        if t.kind == "punct" and t.text == "@":
            if _is_ident(cur.peek(1), "interface"):
                return anns  # '@interface' starts a type declaration
            a = _parse_annotation(cur, 0)
            if a is None:
                cur.next()  # stray '@'
            else:
                anns.append(a)
            continue
        if t.kind == "ident" and t.text in MODIFIERS:
            cur.next()
            continue
        if _is_ident(t, "non") and _is(cur.peek(1), "-") and _is_ident(cur.peek(2), "sealed"):
            cur.next()
            cur.next()
            cur.next()
            continue
        return anns


def _extract_annotations_in_group(cur: _Cursor, out: list[RawAnnotation]) -> None:
    """Walk a '{...}' group collecting annotations (annotation-member array defaults)."""
    cur.next()  # '{'
    depth = 1
    while depth:
        t = cur.peek()
        if t is None:
            raise ParseGaveUp("unbalanced '{' in default clause")
        if t.text == "@" and t.kind == "punct" and _is_ident(cur.peek(1)):
            a = _parse_annotation(cur, 0)
            if a is not None:
                out.append(a)
                continue
        cur.next()
        if t.text == "{":
            depth += 1
        elif t.text == "}":
            depth -= 1


# ---------------------------------------------------------------------------
# declarations

def _parse_params(cur: _Cursor, kind: str) -> list[RawElement]:
    """Parse a parenthesized parameter (or record component) list.

    Only parameters carrying annotations become elements.  Annotations inside
    angle-bracket groups are type-use and are skipped.
    """
    cur.next()  # '('
    out: list[RawElement] = []
    pending: list[RawAnnotation] = []
    last_ident: _Token | None = None
    depth = 1

    def flush() -> None:
        nonlocal pending, last_ident
        if pending and last_ident is not None:
            out.append(RawElement(kind, last_ident.text, tuple(pending), last_ident.line))
        pending = []
        last_ident = None

    while True:
        t = cur.peek()
        if t is None:
            raise ParseGaveUp("unterminated parameter list")
        if t.text == "@" and t.kind == "punct" and depth == 1:
            a = _parse_annotation(cur, 0)
            if a is None:
                cur.next()
            else:
                pending.append(a)
            continue
        if t.text == "<":
            _skip_group(cur, "<", ">")
            continue
        cur.next()
        if t.text == "(":
            depth += 1
        elif t.text == ")":
            depth -= 1
            if depth == 0:
                flush()
                return out
        elif t.text == "," and depth == 1:
            flush()
        elif t.kind == "ident" and depth == 1:
            last_ident = t


def _parse_member(cur: _Cursor, anns: list[RawAnnotation], type_kind: str,
                  type_name: str, elements: list[RawElement]) -> None:
    """Parse one field/method/constructor declaration inside a type body."""
    last_ident: _Token | None = None
    decision: str | None = None
    while decision is None:
        t = cur.peek()
        if t is None:
            raise ParseGaveUp("unterminated member declaration")
        if t.kind == "ident":
            last_ident = t
            cur.next()
        elif t.text == "<":
            _skip_group(cur, "<", ">")
        elif t.text == "@":
            _skip_type_use_annotation(cur)  # after the modifier zone: type-use
        elif t.text == "(":
            decision = "callable"
        elif t.text in {"=", ";", ","}:
            decision = "field"
        elif t.text == "{":
            _skip_group(cur, "{", "}")  # malformed input; swallow the block
            return
        elif t.text == "}":
            return  # let the body loop close the type
        else:
            cur.next()  # '.', '[', ']', varargs dots, and similar

    if decision == "field":
        name = last_ident.text if last_ident else "<unknown>"
        line = last_ident.line if last_ident else cur.peek().line
        _skip_statement(cur)
        if anns:
            elements.append(RawElement("field", name, tuple(anns), line))
        return

    name = last_ident.text if last_ident else "<unknown>"
    line = last_ident.line if last_ident else cur.peek().line
    kind = "constructor" if name == type_name else "method"
    params = _parse_params(cur, "parameter")
    tail_anns: list[RawAnnotation] = []
    while True:
        t = cur.peek()
        if t is None:
            raise ParseGaveUp("unterminated member declaration")
        if t.text == ";":
            cur.next()
            break
        if t.text == "{":
            if type_kind == "annotation":
                # annotation members have no bodies; this is an array default
                _extract_annotations_in_group(cur, tail_anns)
                continue
            _skip_group(cur, "{", "}")
            break
        if t.text == "@" and t.kind == "punct":
            a = _parse_annotation(cur, 0)  # e.g. 'default @Marker;'
            if a is None:
                cur.next()
            else:
                tail_anns.append(a)
            continue
        if t.text == "(":
            _skip_group(cur, "(", ")")
            continue
        cur.next()

    all_anns = anns + tail_anns
    if all_anns:
        elements.append(RawElement(kind, name, tuple(all_anns), line))
    elements.extend(params)


def _parse_enum_constants(cur: _Cursor, elements: list[RawElement]) -> None:
    """Parse the constant section of an enum body, up to ';' or '}'."""
    while True:
        anns = _collect_prelude(cur)
        t = cur.peek()
        if t is None:
            raise ParseGaveUp("unterminated enum body")
        if t.text == ";":
            cur.next()
            return
        if t.text == "}":
            return
        if t.kind == "ident":
            cur.next()
            if anns:
                elements.append(RawElement("field", t.text, tuple(anns), t.line))
            if _is(cur.peek(), "("):
                _skip_group(cur, "(", ")")
            if _is(cur.peek(), "{"):
                _skip_group(cur, "{", "}")  # constant class body: skipped
            if _is(cur.peek(), ","):
                cur.next()
            continue
        cur.next()


def _parse_type(cur: _Cursor, anns: list[RawAnnotation]) -> RawType:
    """Parse a type declaration whose keyword is at the cursor."""
    kw = cur.next()
    if kw.text == "@":
        cur.next()  # 'interface'
        kind = "annotation"
    else:
        kind = kw.text
    start_line = kw.line
    name = "<anonymous>"
    if _is_ident(cur.peek()):
        name = cur.next().text

    elements: list[RawElement] = []
    nested: list[RawType] = []
    if anns:
        elements.append(RawElement("type", name, tuple(anns), start_line))

    if _is(cur.peek(), "<"):
        _skip_group(cur, "<", ">")
    if kind == "record" and _is(cur.peek(), "("):
        elements.extend(_parse_params(cur, "field"))

    # header: scan to the opening brace, ignoring type-use annotations
    while True:
        t = cur.peek()
        if t is None:
            raise ParseGaveUp(f"type {name} has no body")
        if t.text == "{":
            cur.next()
            break
        if t.text == ";":
            cur.next()  # degenerate body-less declaration
            return RawType(kind, name, start_line, t.line, tuple(elements), ())
        if t.text == "@":
            _skip_type_use_annotation(cur)
        elif t.text == "(":
            _skip_group(cur, "(", ")")
        elif t.text == "<":
            _skip_group(cur, "<", ">")
        else:
            cur.next()

    if kind == "enum":
        _parse_enum_constants(cur, elements)

    end_line = start_line
    while True:
        t = cur.peek()
        if t is None:
            raise ParseGaveUp(f"unbalanced body of type {name}")
        if t.text == "}":
            cur.next()
            end_line = t.line
            break
        if t.text == ";":
            cur.next()
            continue
        member_anns = _collect_prelude(cur)
        t = cur.peek()
        if t is None:
            raise ParseGaveUp(f"unbalanced body of type {name}")
        if t.text == "}":
            continue  # dangling annotations before the close; drop them
        if t.text == "{":
            _skip_group(cur, "{", "}")  # static or instance initializer
            continue
        if (t.kind == "ident" and t.text in TYPE_KEYWORDS) or (
                t.text == "@" and _is_ident(cur.peek(1), "interface")):
            nested.append(_parse_type(cur, member_anns))
            continue
        if t.text == ";":
            cur.next()
            continue
        _parse_member(cur, member_anns, kind, name, elements)

    return RawType(kind, name, start_line, end_line, tuple(elements), tuple(nested))


def _read_dotted(cur: _Cursor) -> str:
    parts: list[str] = []
    if _is_ident(cur.peek()):
        parts.append(cur.next().text)
        while _is(cur.peek(), ".") and _is_ident(cur.peek(1)):
            cur.next()
            parts.append(cur.next().text)
    return ".".join(parts)


def _read_import(cur: _Cursor) -> ImportDecl | None:
    is_static = False
    if _is_ident(cur.peek(), "static"):
        is_static = True
        cur.next()
    parts: list[str] = []
    wildcard = False
    if not _is_ident(cur.peek()):
        return None
    parts.append(cur.next().text)
    while _is(cur.peek(), "."):
        cur.next()
        t = cur.peek()
        if _is_ident(t):
            parts.append(cur.next().text)
        elif _is(t, "*"):
            cur.next()
            wildcard = True
            break
        else:
            break
    return ImportDecl(".".join(parts), wildcard, is_static)


# ---------------------------------------------------------------------------
# public operations

def parse_file(source_text: str, path: str) -> SourceFile:
    """Parse one Java compilation unit into its annotation skeleton.

    Raises ParseGaveUp when brace balance cannot be restored; never returns
    partially wrong data.
    """
    cur = _Cursor(_tokenize(source_text))
    package = ""
    imports: list[ImportDecl] = []
    types: list[RawType] = []
    while not cur.at_end():
        anns = _collect_prelude(cur)
        t = cur.peek()
        if t is None:
            break
        if _is_ident(t, "package"):
            cur.next()
            package = _read_dotted(cur)
            _skip_until_semi(cur)
            continue  # package-level annotations are not class-scoped; drop
        if _is_ident(t, "import"):
            cur.next()
            decl = _read_import(cur)
            if decl is not None:
                imports.append(decl)
            _skip_until_semi(cur)
            continue
        if (t.kind == "ident" and t.text in TYPE_KEYWORDS) or (
                t.text == "@" and _is_ident(cur.peek(1), "interface")):
            types.append(_parse_type(cur, anns))
            continue
        cur.next()  # stray token at top level; island parsing skips it
    return SourceFile(
        path=str(path),
        package_name=package,
        imports=tuple(imports),
        types=tuple(types),
        line_count=max(1, len(source_text.splitlines())),
    )


def parse_path(path: Path | str, display_path: str | None = None) -> SourceFile:
    """Read and parse one file; invalid UTF-8 decodes with replacement."""
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise UnreadableFile(f"{path}: {exc.strerror or exc}") from exc
    return parse_file(raw.decode("utf-8", errors="replace"), display_path or str(path))


def _glob_to_regex(pattern: str) -> str:
    out: list[str] = []
    i, n = 0, len(pattern)
    while i < n:
        ch = pattern[i]
        if ch == "*":
            if pattern.startswith("**/", i):
                out.append(r"(?:[^/]+/)*")
                i += 3
                continue
            if pattern.startswith("**", i):
                out.append(r".*")
                i += 2
                continue
            out.append(r"[^/]*")
        elif ch == "?":
            out.append(r"[^/]")
        else:
            out.append(re.escape(ch))
        i += 1
    return "".join(out)


def _compile_exclude(pattern: str):
    rx = re.compile(_glob_to_regex(pattern))
    if "/" in pattern:
        return lambda rel: rx.fullmatch(rel) is not None
    return lambda rel: any(rx.fullmatch(part) for part in rel.split("/"))


def scan_project(root: Path | str, excludes: tuple[str, ...] = ()) -> ScanResult:
    """Walk ``root`` for .java files and parse each one.

    File order is deterministic (lexicographic by relative path).  Files that
    cannot be read or parsed are reported in ``skipped`` with a reason;
    excluded files are silently filtered.
    """
    rootp = Path(root)
    if not rootp.is_dir():
        raise RootNotFound(str(root))
    matchers = [_compile_exclude(p) for p in excludes]
    candidates = sorted(
        (p for p in rootp.rglob("*.java") if p.is_file()),
        key=lambda p: p.relative_to(rootp).as_posix(),
    )
    files: list[SourceFile] = []
    skipped: list[SkippedFile] = []
    for p in candidates:
        rel = p.relative_to(rootp).as_posix()
        if any(m(rel) for m in matchers):
            continue
        try:
            files.append(parse_path(p, rel))
        except UnreadableFile as exc:
            skipped.append(SkippedFile(rel, f"unreadable: {exc}"))
        except ParseGaveUp as exc:
            skipped.append(SkippedFile(rel, f"parse gave up: {exc}"))
    return ScanResult(tuple(files), tuple(skipped))


def iter_annotations(ann: RawAnnotation):
    """Yield ``ann`` and every nested annotation, depth-first, in source order."""
    yield ann
    for child in ann.children:
        yield from iter_annotations(child)


def iter_types(sf: SourceFile):
    """Yield every type in the file, outer types before their nested types."""
    stack = list(sf.types)
    out = []
    while stack:
        t = stack.pop(0)
        out.append(t)
        stack = list(t.nested) + stack
    return iter(out)
