"""Method-granularity parser for Java source.

Walks compilation units structurally (types, members), extracts every
method-like body (methods, constructors, initializer blocks, methods of
nested/anonymous/local classes and enum constant bodies), and parses each
body into the statement/expression structures of `jast`.

A body that fails to parse is skipped and reported; it never aborts the
surrounding file. Generics are consumed via a strict balanced-angle scan,
and shift operators are re-joined from single `>` tokens inside the
expression parser (see lexer notes).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import jast
from .lexer import MODIFIER_WORDS, PRIMITIVE_TYPES, LexError, Token, tokenize


class ParseError(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class ParsedMethod:
    name: str
    start_line: int
    end_line: int
    body: jast.Block


@dataclass
class ParseIssue:
    line: int
    message: str
    method_name: Optional[str] = None


ASSIGN_OPS = frozenset(
    {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="}
)

BINARY_PRECEDENCE = {
    "||": 1, "&&": 2, "|": 3, "^": 4, "&": 5,
    "==": 6, "!=": 6,
    "<": 7, ">": 7, "<=": 7, ">=": 7, "instanceof": 7,
    "<<": 8, ">>": 8, ">>>": 8,
    "+": 9, "-": 9,
    "*": 10, "/": 10, "%": 10,
}

TYPE_KEYWORDS = frozenset({"class", "interface", "enum"})

_GENERIC_OK = frozenset({"?", ",", ".", "&", "@", "[", "]", "extends", "super"})


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self, k: int = 0) -> Token:
        j = self.i + k
        return self.tokens[j] if j < len(self.tokens) else self.tokens[-1]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at(self, *texts: str) -> bool:
        return self.peek().text in texts

    def at_kind(self, kind: str) -> bool:
        return self.peek().kind == kind

    def accept(self, text: str) -> bool:
        if self.peek().text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line)
        return self.next()

    def mark(self) -> int:
        return self.i

    def reset(self, mark: int) -> None:
        self.i = mark


def _adjacent(a: Token, b: Token) -> bool:
    return a.line == b.line and b.col == a.col + len(a.text)


class JavaParser:
    def __init__(self, source: str):
        self.cur = _Cursor(tokenize(source))
        self.methods: list[ParsedMethod] = []
        self.issues: list[ParseIssue] = []

    # ---- compilation unit ------------------------------------------

    def parse(self) -> tuple[list[ParsedMethod], list[ParseIssue]]:
        cur = self.cur
        while not cur.at_kind("eof"):
            tok = cur.peek()
            if tok.text in ("package", "import"):
                self._skip_to(";")
            elif tok.text == "@" and cur.peek(1).text == "interface":
                self._parse_type_decl()
            elif tok.text == "@":
                self._skip_annotation()
            elif self._at_type_keyword():
                self._parse_type_decl()
            elif tok.text in MODIFIER_WORDS or tok.text == "-":
                cur.next()  # "-" occurs in non-sealed
            else:
                cur.next()
        self.methods.sort(key=lambda m: (m.start_line, m.end_line))
        return self.methods, self.issues

    def _at_type_keyword(self) -> bool:
        tok = self.cur.peek()
        if tok.text in TYPE_KEYWORDS:
            return True
        # contextual: record Name(
        return tok.text == "record" and self.cur.peek(1).kind == "ident"

    def _skip_to(self, text: str) -> None:
        cur = self.cur
        while not cur.at_kind("eof") and not cur.at(text):
            cur.next()
        cur.accept(text)

    def _skip_annotation(self) -> None:
        cur = self.cur
        cur.expect("@")
        cur.next()  # name
        while cur.accept("."):
            cur.next()
        if cur.at("("):
            self._skip_balanced("(", ")")

    def _skip_balanced(self, open_text: str, close_text: str) -> None:
        cur = self.cur
        cur.expect(open_text)
        depth = 1
        while depth and not cur.at_kind("eof"):
            tok = cur.next()
            if tok.text == open_text:
                depth += 1
            elif tok.text == close_text:
                depth -= 1
        if depth:
            raise ParseError(f"unbalanced {open_text!r}", cur.peek().line)

    def _skip_generics(self) -> None:
        """Consume a balanced <...> section, rejecting anything that could
        not occur inside a type argument list."""
        cur = self.cur
        start = cur.expect("<")
        depth = 1
        while depth:
            tok = cur.peek()
            if tok.kind == "eof":
                raise ParseError("unbalanced generics", start.line)
            if tok.text == "<":
                depth += 1
            elif tok.text == ">":
                depth -= 1
            elif not (
                tok.kind == "ident"
                or tok.text in PRIMITIVE_TYPES
                or tok.text in _GENERIC_OK
            ):
                raise ParseError(f"not a type argument: {tok.text!r}", tok.line)
            cur.next()

    # ---- type declarations and members -----------------------------

    def _parse_type_decl(self) -> None:
        cur = self.cur
        if cur.accept("@"):
            cur.expect("interface")
        else:
            kw = cur.next()  # class / interface / enum / record
            is_enum = kw.text == "enum"
            if kw.text not in TYPE_KEYWORDS and kw.text != "record":
                raise ParseError(f"expected type declaration, found {kw.text!r}", kw.line)
            cur.next()  # type name
            if cur.at("<"):
                self._skip_generics()
            if kw.text == "record" and cur.at("("):
                self._skip_balanced("(", ")")
            while not cur.at("{"):
                if cur.at_kind("eof"):
                    raise ParseError("missing type body", kw.line)
                cur.next()
            self._parse_class_body(is_enum=is_enum)
            return
        # annotation type: skip its body wholesale
        cur.next()
        while not cur.at("{"):
            if cur.at_kind("eof"):
                return
            cur.next()
        self._skip_balanced("{", "}")

    def _parse_class_body(self, is_enum: bool = False) -> None:
        cur = self.cur
        cur.expect("{")
        if is_enum:
            self._parse_enum_constants()
        while not cur.at("}"):
            if cur.at_kind("eof"):
                raise ParseError("unterminated class body", cur.peek().line)
            self._parse_member()
        cur.expect("}")

    def _parse_enum_constants(self) -> None:
        cur = self.cur
        while True:
            while cur.at("@"):
                self._skip_annotation()
            if cur.at(";") or cur.at("}"):
                break
            if not cur.at_kind("ident"):
                break
            cur.next()  # constant name
            if cur.at("("):
                self._parse_args()
            if cur.at("{"):
                self._parse_class_body()
            if not cur.accept(","):
                break
        cur.accept(";")

    def _parse_member(self) -> None:
        cur = self.cur
        if cur.accept(";"):
            return
        start_tok = cur.peek()
        while cur.at("@"):
            self._skip_annotation()
        is_static = False
        while cur.peek().text in MODIFIER_WORDS or cur.at("-"):
            if cur.at("non") and cur.peek(1).text == "-":
                cur.next(), cur.next(), cur.next()
                continue
            if cur.at("static"):
                is_static = True
            if cur.at("record") and cur.peek(1).kind == "ident" and cur.peek(2).text == "(":
                break  # contextual keyword opening a nested record
            cur.next()
        tok = cur.peek()
        if tok.text in TYPE_KEYWORDS or (tok.text == "@" and cur.peek(1).text == "interface"):
            self._parse_type_decl()
            return
        if tok.text == "record" and cur.peek(1).kind == "ident":
            self._parse_type_decl()
            return
        if tok.text == "{":
            name = "<static-initializer>" if is_static else "<initializer>"
            self._parse_method_like(name, start_tok)
            return
        if tok.kind == "eof":
            return
        self._parse_field_or_method(start_tok)

    def _parse_field_or_method(self, start_tok: Token) -> None:
        cur = self.cur
        if cur.at("<"):
            self._skip_generics()
        delim = self._scan_member_delimiter()
        if delim == "(":
            # consume return type (if any); the identifier just before the
            # parenthesis is the method or constructor name
            name = None
            while not cur.at("("):
                tok = cur.next()
                if tok.kind == "eof":
                    raise ParseError("unterminated member", start_tok.line)
                if tok.text == "<":
                    continue
                name = tok.text if tok.kind in ("ident", "keyword") else name
            self._skip_balanced("(", ")")
            while not cur.at("{") and not cur.at(";"):
                if cur.at_kind("eof"):
                    raise ParseError("unterminated member", start_tok.line)
                cur.next()
            if cur.accept(";"):
                return  # abstract or native: no body, no fragment
            self._parse_method_like(name or "<anonymous>", start_tok)
        elif delim == "{":
            # compact record constructor: Name { ... }
            name = cur.peek().text if cur.at_kind("ident") else "<initializer>"
            while not cur.at("{"):
                cur.next()
            self._parse_method_like(name, start_tok)
        else:
            self._parse_field(start_tok)

    def _scan_member_delimiter(self) -> str:
        """Look ahead for the first of ( = ; { outside generics, which
        decides between method, field, and compact constructor."""
        cur = self.cur
        j = cur.i
        angle = 0
        while j < len(cur.tokens):
            text = cur.tokens[j].text
            if text == "<":
                angle += 1
            elif text == ">":
                angle = max(0, angle - 1)
            elif text == "@" and angle == 0:
                # mid-signature annotation, possibly with arguments
                j += 1
                while j < len(cur.tokens) and cur.tokens[j].kind in ("ident", "keyword"):
                    j += 1
                    if j < len(cur.tokens) and cur.tokens[j].text == ".":
                        j += 1
                        continue
                    break
                if j < len(cur.tokens) and cur.tokens[j].text == "(":
                    depth = 0
                    while j < len(cur.tokens):
                        t = cur.tokens[j].text
                        if t == "(":
                            depth += 1
                        elif t == ")":
                            depth -= 1
                            if depth == 0:
                                break
                        j += 1
                continue
            elif angle == 0 and text in ("(", "=", ";", "{"):
                return text
            elif cur.tokens[j].kind == "eof":
                break
            j += 1
        return ";"

    def _parse_field(self, start_tok: Token) -> None:
        cur = self.cur
        try:
            depth = 0
            while True:
                tok = cur.peek()
                if tok.kind == "eof":
                    raise ParseError("unterminated field", start_tok.line)
                if tok.text == "=" and depth == 0:
                    cur.next()
                    if cur.at("{"):
                        self._parse_array_initializer()
                    else:
                        self._parse_assignment()
                    continue
                if tok.text == ";" and depth == 0:
                    cur.next()
                    return
                if tok.text in ("[", "("):
                    depth += 1
                elif tok.text in ("]", ")"):
                    depth -= 1
                cur.next()
        except ParseError as err:
            self.issues.append(ParseIssue(err.line, f"field skipped: {err}"))
            self._recover_to_semicolon()

    def _recover_to_semicolon(self) -> None:
        cur = self.cur
        depth = 0
        while not cur.at_kind("eof"):
            tok = cur.next()
            if tok.text == "{":
                depth += 1
            elif tok.text == "}":
                if depth == 0:
                    cur.i -= 1
                    return
                depth -= 1
            elif tok.text == ";" and depth == 0:
                return

    def _parse_method_like(self, name: str, start_tok: Token) -> None:
        cur = self.cur
        open_idx = cur.i  # at '{'
        try:
            body = self._parse_block()
        except ParseError as err:
            self.issues.append(
                ParseIssue(err.line, f"method body skipped: {err}", method_name=name)
            )
            cur.reset(open_idx)
            self._skip_balanced("{", "}")
            return
        end_line = cur.tokens[cur.i - 1].line
        self.methods.append(ParsedMethod(name, start_tok.line, end_line, body))

    # ---- statements -------------------------------------------------

    def _parse_block(self) -> jast.Block:
        cur = self.cur
        cur.expect("{")
        block = jast.Block()
        while not cur.at("}"):
            if cur.at_kind("eof"):
                raise ParseError("unterminated block", cur.peek().line)
            block.stmts.append(self._parse_statement())
        cur.expect("}")
        return block

    def _parse_statement(self) -> jast.Stmt:
        cur = self.cur
        tok = cur.peek()
        text = tok.text

        if text == "{":
            return self._parse_block()
        if text == ";":
            cur.next()
            return jast.Empty()
        if text == "if":
            return self._parse_if()
        if text == "while":
            cur.next()
            cur.expect("(")
            cond = self._parse_expression()
            cur.expect(")")
            return jast.While(cond, tok.line, self._parse_statement())
        if text == "do":
            cur.next()
            body = self._parse_statement()
            cur.expect("while")
            line = cur.peek().line
            cur.expect("(")
            cond = self._parse_expression()
            cur.expect(")")
            cur.expect(";")
            return jast.DoWhile(body, cond, line)
        if text == "for":
            return self._parse_for()
        if text == "switch":
            return self._parse_switch()
        if text == "break":
            cur.next()
            label = cur.next().text if cur.at_kind("ident") else None
            cur.expect(";")
            return jast.Break(label)
        if text == "continue":
            cur.next()
            label = cur.next().text if cur.at_kind("ident") else None
            cur.expect(";")
            return jast.Continue(label)
        if text == "return":
            cur.next()
            value = None if cur.at(";") else self._parse_expression()
            cur.expect(";")
            return jast.Return(value, tok.line)
        if text == "throw":
            cur.next()
            value = self._parse_expression()
            cur.expect(";")
            return jast.Throw(value, tok.line)
        if text == "try":
            return self._parse_try()
        if text == "synchronized":
            cur.next()
            cur.expect("(")
            lock = self._parse_expression()
            cur.expect(")")
            return jast.Sync(lock, tok.line, self._parse_block())
        if text == "assert":
            cur.next()
            cond = self._parse_expression()
            msg = self._parse_expression() if cur.accept(":") else None
            cur.expect(";")
            return jast.Assert(cond, msg, tok.line)
        if text == "yield":
            cur.next()
            value = self._parse_expression()
            cur.expect(";")
            return jast.Yield(value, tok.line)
        if text in TYPE_KEYWORDS or (text == "record" and cur.peek(1).kind == "ident" and cur.peek(2).text == "("):
            self._parse_type_decl()
            return jast.LocalTypeDecl()
        if text in ("final", "abstract", "static") and cur.peek(1).text in TYPE_KEYWORDS:
            cur.next()
            self._parse_type_decl()
            return jast.LocalTypeDecl()
        if tok.kind == "ident" and cur.peek(1).text == ":" and cur.peek(2).text != ":":
            cur.next(), cur.next()
            return jast.Labeled(text, self._parse_statement())

        decl = self._try_parse_local_decl()
        if decl is not None:
            return decl
        expr = self._parse_expression()
        cur.expect(";")
        return jast.ExprStmt(expr, tok.line)

    def _parse_if(self) -> jast.If:
        cur = self.cur
        tok = cur.expect("if")
        cur.expect("(")
        cond = self._parse_expression()
        cur.expect(")")
        then = self._parse_statement()
        orelse = self._parse_statement() if cur.accept("else") else None
        return jast.If(cond, tok.line, then, orelse)

    def _parse_for(self) -> jast.Stmt:
        cur = self.cur
        cur.expect("for")
        cur.expect("(")

        mark = cur.mark()
        foreach = self._try_parse_foreach_header()
        if foreach is not None:
            var_name, iterable, line = foreach
            cur.expect(")")
            return jast.ForEach(var_name, iterable, line, self._parse_statement())
        cur.reset(mark)

        init: Optional[jast.Stmt] = None
        if not cur.accept(";"):
            init = self._try_parse_local_decl()
            if init is None:
                exprs = [self._parse_assignment()]
                while cur.accept(","):
                    exprs.append(self._parse_assignment())
                line = cur.peek().line
                cur.expect(";")
                init = jast.Block([jast.ExprStmt(e, line) for e in exprs])
        cond = None
        cond_line = cur.peek().line
        if not cur.at(";"):
            cond = self._parse_expression()
        cur.expect(";")
        updates = []
        update_line = cur.peek().line
        if not cur.at(")"):
            updates.append(self._parse_assignment())
            while cur.accept(","):
                updates.append(self._parse_assignment())
        cur.expect(")")
        return jast.For(init, cond, cond_line, updates, update_line, self._parse_statement())

    def _try_parse_foreach_header(self):
        cur = self.cur
        mark = cur.mark()
        try:
            while cur.at("@"):
                self._skip_annotation()
            cur.accept("final")
            self._parse_type_ref()
            if not cur.at_kind("ident"):
                raise ParseError("no loop variable", cur.peek().line)
            name_tok = cur.next()
            if not cur.accept(":"):
                raise ParseError("not a for-each", name_tok.line)
            iterable = self._parse_expression()
            return name_tok.text, iterable, name_tok.line
        except ParseError:
            cur.reset(mark)
            return None

    def _parse_switch(self) -> jast.Switch:
        cur = self.cur
        tok = cur.expect("switch")
        cur.expect("(")
        selector = self._parse_expression()
        cur.expect(")")
        cur.expect("{")
        groups: list[jast.CaseGroup] = []
        while not cur.at("}"):
            if cur.at_kind("eof"):
                raise ParseError("unterminated switch", tok.line)
            is_default = False
            saw_label = False
            while cur.at("case", "default"):
                saw_label = True
                if cur.next().text == "default":
                    is_default = True
                else:
                    # labels carry no control-flow content; skip to the
                    # arrow or colon that ends them
                    depth = 0
                    while not (depth == 0 and cur.at(":", "->")):
                        t = cur.next()
                        if t.kind == "eof":
                            raise ParseError("unterminated case label", tok.line)
                        if t.text in ("(", "["):
                            depth += 1
                        elif t.text in (")", "]"):
                            depth -= 1
                if cur.at("->"):
                    break
                cur.expect(":")
            if not saw_label:
                raise ParseError(f"expected case label, found {cur.peek().text!r}", cur.peek().line)
            if cur.accept("->"):
                stmts = [self._parse_statement()]
                groups.append(jast.CaseGroup(is_default, stmts, arrow=True))
            else:
                stmts = []
                while not cur.at("case", "default", "}"):
                    if cur.at_kind("eof"):
                        raise ParseError("unterminated switch", tok.line)
                    stmts.append(self._parse_statement())
                groups.append(jast.CaseGroup(is_default, stmts, arrow=False))
        cur.expect("}")
        return jast.Switch(selector, tok.line, groups)

    def _parse_try(self) -> jast.Try:
        cur = self.cur
        cur.expect("try")
        resources: list[jast.LocalDecl] = []
        if cur.at("("):
            cur.next()
            while not cur.at(")"):
                mark = cur.mark()
                decl = self._try_parse_resource()
                if decl is not None:
                    resources.append(decl)
                else:
                    cur.reset(mark)
                    self._parse_expression()  # bare effectively-final reference
                if not cur.accept(";"):
                    break
            cur.expect(")")
        body = self._parse_block()
        catches = []
        while cur.at("catch"):
            cur.next()
            self._skip_balanced("(", ")")
            catches.append(jast.Catch(self._parse_block()))
        finally_block = self._parse_block() if cur.accept("finally") else None
        return jast.Try(resources, body, catches, finally_block)

    def _try_parse_resource(self) -> Optional[jast.LocalDecl]:
        cur = self.cur
        mark = cur.mark()
        try:
            while cur.at("@"):
                self._skip_annotation()
            cur.accept("final")
            self._parse_type_ref()
            if not cur.at_kind("ident"):
                raise ParseError("no resource name", cur.peek().line)
            name_tok = cur.next()
            if not cur.accept("="):
                raise ParseError("no resource initializer", name_tok.line)
            init = self._parse_assignment()
            return jast.LocalDecl([(name_tok.text, init)], name_tok.line)
        except ParseError:
            cur.reset(mark)
            return None

    def _try_parse_local_decl(self) -> Optional[jast.LocalDecl]:
        cur = self.cur
        mark = cur.mark()
        try:
            while cur.at("@"):
                self._skip_annotation()
            while cur.at("final"):
                cur.next()
            self._parse_type_ref()
            if not cur.at_kind("ident"):
                raise ParseError("no declarator", cur.peek().line)
            line = cur.peek().line
            declarators = []
            while True:
                name_tok = cur.next()
                if name_tok.kind != "ident":
                    raise ParseError("bad declarator", name_tok.line)
                while cur.at("[") and cur.peek(1).text == "]":
                    cur.next(), cur.next()
                init = None
                if cur.accept("="):
                    if cur.at("{"):
                        init = self._parse_array_initializer()
                    else:
                        init = self._parse_assignment()
                declarators.append((name_tok.text, init))
                if not cur.accept(","):
                    break
            if not cur.accept(";"):
                raise ParseError("missing ';' after declaration", cur.peek().line)
            return jast.LocalDecl(declarators, line)
        except ParseError:
            cur.reset(mark)
            return None

    def _parse_type_ref(self) -> str:
        """Parse a type, returning its base (rightmost simple) name."""
        cur = self.cur
        tok = cur.peek()
        if tok.text in PRIMITIVE_TYPES:
            cur.next()
            base = tok.text
        elif tok.kind == "ident":
            cur.next()
            base = tok.text
            if base == "var" and cur.at_kind("ident"):
                return "var"
            while cur.at(".") and cur.peek(1).kind == "ident":
                cur.next()
                base = cur.next().text
            if cur.at("<"):
                self._skip_generics()
        else:
            raise ParseError(f"not a type: {tok.text!r}", tok.line)
        while cur.at("[") and cur.peek(1).text == "]":
            cur.next(), cur.next()
        return base

    # ---- expressions -------------------------------------------------

    def _parse_expression(self) -> jast.Expr:
        return self._parse_assignment()

    def _peek_operator(self):
        """Current operator text with adjacent `>` tokens merged, plus the
        number of raw tokens it spans."""
        cur = self.cur
        t0 = cur.peek()
        if t0.text != ">":
            return t0.text, 1
        t1 = cur.peek(1)
        if t1.text == ">" and _adjacent(t0, t1):
            t2 = cur.peek(2)
            if t2.text == ">" and _adjacent(t1, t2):
                return ">>>", 3
            if t2.text == ">=" and _adjacent(t1, t2):
                return ">>>=", 3
            return ">>", 2
        if t1.text == ">=" and _adjacent(t0, t1):
            return ">>=", 2
        return ">", 1

    def _parse_assignment(self) -> jast.Expr:
        left = self._parse_ternary()
        op, ntok = self._peek_operator()
        if op in ASSIGN_OPS:
            for _ in range(ntok):
                self.cur.next()
            value = self._parse_assignment()
            return jast.Assign(op, left, value)
        return left

    def _parse_ternary(self) -> jast.Expr:
        cond = self._parse_binary(1)
        if self.cur.accept("?"):
            then = self._parse_expression()
            self.cur.expect(":")
            orelse = self._parse_assignment()
            return jast.Ternary(cond, then, orelse)
        return cond

    def _parse_binary(self, min_prec: int) -> jast.Expr:
        left = self._parse_unary()
        while True:
            op, ntok = self._peek_operator()
            prec = BINARY_PRECEDENCE.get(op)
            if prec is None or prec < min_prec:
                return left
            if op in ASSIGN_OPS:
                return left
            for _ in range(ntok):
                self.cur.next()
            if op == "instanceof":
                type_name = self._parse_type_ref()
                if self.cur.at_kind("ident"):
                    self.cur.next()  # pattern variable
                left = jast.InstanceOf(left, type_name)
                continue
            right = self._parse_binary(prec + 1)
            left = jast.Binary(op, left, right)

    def _parse_unary(self) -> jast.Expr:
        cur = self.cur
        tok = cur.peek()
        if tok.text in ("+", "-", "!", "~", "++", "--"):
            cur.next()
            return jast.Unary(tok.text, self._parse_unary(), prefix=True)
        if tok.text == "(":
            cast = self._try_parse_cast()
            if cast is not None:
                return cast
        return self._parse_postfix(self._parse_primary())

    def _try_parse_cast(self) -> Optional[jast.Expr]:
        cur = self.cur
        mark = cur.mark()
        try:
            cur.expect("(")
            tok = cur.peek()
            primitive = tok.text in PRIMITIVE_TYPES
            self._parse_type_ref()
            while cur.accept("&"):  # intersection cast
                self._parse_type_ref()
            cur.expect(")")
            nxt = cur.peek()
            operand_start = (
                nxt.kind in ("ident", "number", "string", "char")
                or nxt.text in ("(", "!", "~", "new", "this", "super", "true", "false", "null")
            )
            if primitive:
                operand_start = operand_start or nxt.text in ("+", "-", "++", "--")
            if not operand_start:
                raise ParseError("not a cast", nxt.line)
            return self._parse_unary()  # casts are transparent
        except ParseError:
            cur.reset(mark)
            return None

    def _parse_postfix(self, expr: jast.Expr) -> jast.Expr:
        cur = self.cur
        while True:
            if cur.at(".") :
                nxt = cur.peek(1)
                if nxt.text == "new":
                    cur.next(), cur.next()
                    expr = self._parse_creation()
                    continue
                if nxt.text == "<":
                    cur.next()
                    self._skip_generics()
                    name = cur.next().text
                    expr = jast.Call(name, self._parse_args(), receiver=expr)
                    continue
                if nxt.kind in ("ident", "keyword"):
                    cur.next()
                    name = cur.next().text
                    if cur.at("("):
                        expr = jast.Call(name, self._parse_args(), receiver=expr)
                    else:
                        expr = jast.FieldAccess(expr, name)
                    continue
                raise ParseError(f"bad member access: {nxt.text!r}", nxt.line)
            if cur.at("["):
                if cur.peek(1).text == "]":
                    cur.next(), cur.next()  # array class literal dims
                    continue
                cur.next()
                index = self._parse_expression()
                cur.expect("]")
                expr = jast.ArrayAccess(expr, index)
                continue
            if cur.at("++", "--"):
                op = cur.next().text
                expr = jast.Unary(op, expr, prefix=False)
                continue
            if cur.at("::"):
                cur.next()
                cur.next()  # method name or 'new'
                return jast.MethodRef()
            return expr

    def _parse_args(self) -> tuple[jast.Expr, ...]:
        cur = self.cur
        cur.expect("(")
        args = []
        if not cur.at(")"):
            args.append(self._parse_assignment())
            while cur.accept(","):
                args.append(self._parse_assignment())
        cur.expect(")")
        return tuple(args)

    def _parse_primary(self) -> jast.Expr:
        cur = self.cur
        tok = cur.peek()
        if tok.kind in ("number", "string", "char"):
            cur.next()
            return jast.Literal(tok.text)
        if tok.text in ("true", "false", "null"):
            cur.next()
            return jast.Literal(tok.text)
        if tok.text == "new":
            cur.next()
            return self._parse_creation()
        if tok.text == "this":
            cur.next()
            if cur.at("("):
                return jast.Call("this", self._parse_args())
            return jast.Name("this")
        if tok.text == "super":
            cur.next()
            if cur.at("("):
                return jast.Call("super", self._parse_args())
            return jast.Name("super")
        if tok.text in PRIMITIVE_TYPES:
            cur.next()
            return jast.Name(tok.text)  # int.class etc., via postfix
        if tok.text == "(":
            if self._lambda_ahead():
                return self._parse_lambda_from_parens()
            cur.next()
            expr = self._parse_expression()
            cur.expect(")")
            return expr
        if tok.text == "switch":
            return self._parse_switch_expression()
        if tok.kind == "ident":
            if cur.peek(1).text == "->":
                cur.next(), cur.next()
                self._consume_lambda_body()
                return jast.Lambda()
            cur.next()
            if cur.at("("):
                return jast.Call(tok.text, self._parse_args())
            return jast.Name(tok.text)
        raise ParseError(f"unexpected token {tok.text!r}", tok.line)

    def _parse_switch_expression(self) -> jast.Expr:
        # switch expressions are opaque at the instruction level, but the
        # cursor must still consume them correctly
        stmt = self._parse_switch()
        del stmt
        return jast.Lambda()

    def _lambda_ahead(self) -> bool:
        cur = self.cur
        j = cur.i
        depth = 0
        while j < len(cur.tokens):
            text = cur.tokens[j].text
            if text == "(":
                depth += 1
            elif text == ")":
                depth -= 1
                if depth == 0:
                    return j + 1 < len(cur.tokens) and cur.tokens[j + 1].text == "->"
            elif cur.tokens[j].kind == "eof":
                return False
            j += 1
        return False

    def _parse_lambda_from_parens(self) -> jast.Expr:
        self._skip_balanced("(", ")")
        self.cur.expect("->")
        self._consume_lambda_body()
        return jast.Lambda()

    def _consume_lambda_body(self) -> None:
        if self.cur.at("{"):
            self._skip_balanced("{", "}")
        else:
            self._parse_assignment()

    def _parse_creation(self) -> jast.Expr:
        cur = self.cur
        tok = cur.peek()
        if tok.text in PRIMITIVE_TYPES:
            cur.next()
            base = tok.text
        else:
            base = self._parse_creation_type_name()
        if cur.at("<"):
            self._skip_generics()
        if cur.at("["):
            while cur.at("["):
                cur.next()
                if not cur.at("]"):
                    self._parse_expression()
                cur.expect("]")
            if cur.at("{"):
                self._parse_array_initializer()
            return jast.NewArray(base)
        args = self._parse_args() if cur.at("(") else tuple()
        if cur.at("{"):
            self._parse_class_body()  # anonymous class; methods become fragments
        return jast.New(base, args)

    def _parse_creation_type_name(self) -> str:
        cur = self.cur
        tok = cur.peek()
        if tok.kind != "ident":
            raise ParseError(f"bad creation type: {tok.text!r}", tok.line)
        cur.next()
        base = tok.text
        if cur.at("<"):
            self._skip_generics()
        while cur.at(".") and cur.peek(1).kind == "ident":
            cur.next()
            base = cur.next().text
            if cur.at("<"):
                self._skip_generics()
        return base

    def _parse_array_initializer(self) -> jast.Expr:
        cur = self.cur
        cur.expect("{")
        while not cur.at("}"):
            if cur.at_kind("eof"):
                raise ParseError("unterminated array initializer", cur.peek().line)
            if cur.at("{"):
                self._parse_array_initializer()
            else:
                self._parse_assignment()
            if not cur.accept(","):
                break
        cur.expect("}")
        return jast.ArrayInit()


def parse_source(source: str) -> tuple[list[ParsedMethod], list[ParseIssue]]:
    """Extract all method-like bodies from one source file.

    Lexing or top-level structural failures yield an empty method list and
    a single issue; per-method body failures are reported individually.
    """
    try:
        parser = JavaParser(source)
    except LexError as err:
        return [], [ParseIssue(err.line, f"file skipped: {err}")]
    try:
        return parser.parse()
    except ParseError as err:
        parser.issues.append(ParseIssue(err.line, f"file truncated: {err}"))
        parser.methods.sort(key=lambda m: (m.start_line, m.end_line))
        return parser.methods, parser.issues
