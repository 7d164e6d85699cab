"""Syntaxe textuelle des types : impression et analyse.

Precedence : ``+`` lie plus fort que ``&``, lui-meme plus fort que ``|``.
Exemples : ``XXI & ZZI & IIZ``, ``(1/rt2)(X + Y)``, ``rt2/2(X + Y)``,
``(XX & ZZ)@{1,2} & Z@{3}``, ``Z & Z | -Z & -Z``, ``ZI -> ZZ``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Final

from src.algebra.additive import AdditiveOperator, is_valid_additive
from src.algebra.qtype import Branch, Partition, QType
from src.errors import AlgebraError, DslSyntaxError, InvalidAdditiveError, OutsideRingError
from src.pauli.ring import ONE, RingCoeff

# ----------------------------------------------------------------------
# Impression
# ----------------------------------------------------------------------


def format_coeff(c: RingCoeff) -> str:
    return str(c)


def _signed_words(m: AdditiveOperator, *, with_coeffs: bool) -> str:
    parts: list[str] = []
    for index, (p, c) in enumerate(m):
        negative = c.signum() < 0
        magnitude = abs(c)
        body = p.word
        if with_coeffs and not magnitude.is_one():
            body = f"{format_coeff(magnitude)} {body}"
        if index == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


def format_operator(m: AdditiveOperator) -> str:
    """Ecrit un operateur additif ; la magnitude commune est factorisee."""
    if m.is_zero():
        return "0"
    single = m.as_pauli()
    if single is not None:
        return single.label
    magnitudes = {abs(c) for c in m.coefficients()}
    if len(magnitudes) == 1:
        (common,) = magnitudes
        if not common.is_one():
            return f"{format_coeff(common)}({_signed_words(m, with_coeffs=False)})"
    return _signed_words(m, with_coeffs=True)


def _format_qubits(qubits: tuple[int, ...]) -> str:
    return "@{" + ",".join(str(q) for q in qubits) + "}"


def format_branch(b: Branch) -> str:
    parts = []
    for part in sorted(b.partitions, key=lambda p: min(p.qubits)):
        inner = format_branch(part.branch)
        local_terms = part.branch.all_terms()
        if len(local_terms) == 1 and local_terms[0].is_pauli():
            parts.append(f"{inner}{_format_qubits(part.qubits)}")
        else:
            parts.append(f"({inner}){_format_qubits(part.qubits)}")
    parts.extend(format_operator(t) for t in b.terms)
    if not parts:
        return "I" * b.n
    return " & ".join(parts)


def format_qtype(t: QType) -> str:
    return " | ".join(format_branch(b) for b in t.branches)


# ----------------------------------------------------------------------
# Analyse
# ----------------------------------------------------------------------

_TOKEN_RE: Final[re.Pattern[str]] = re.compile(
    r"\s*(?:(?P<ARROW>->)|(?P<RT2>rt2)|(?P<WORD>[IXYZ]+)|(?P<INT>\d+)"
    r"|(?P<SYM>[&|+\-*/()@{},]))"
)

_COEFF_KINDS: Final[frozenset[str]] = frozenset({"INT", "RT2"})
_COEFF_SYMBOLS: Final[frozenset[str]] = frozenset({"+", "-", "*", "/", "(", ")"})


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    column: int


def tokenize(text: str, *, line: int = 1, column: int = 1) -> list[Token]:
    tokens: list[Token] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN_RE.match(text, position)
        if match is None or match.end() == position:
            offset = position + len(text[position:]) - len(text[position:].lstrip())
            raise DslSyntaxError(
                f"caractere inattendu {text[offset]!r}", line=line, column=column + offset
            )
        kind = match.lastgroup or "SYM"
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), column + start))
        position = match.end()
    tokens.append(Token("EOF", "", column + len(text)))
    return tokens


@dataclass
class _Partial:
    """Branche en cours de lecture : termes libres et partitions locales."""

    terms: list[AdditiveOperator]
    partitions: list[Partition]


class TypeParser:
    """Descente recursive sur la grammaire des types."""

    def __init__(self, text: str, *, n: int | None = None, line: int = 1, column: int = 1) -> None:
        self.tokens = tokenize(text, line=line, column=column)
        self.index = 0
        self.n = n
        self.line = line

    # -- utilitaires ---------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _error(self, message: str, token: Token | None = None) -> DslSyntaxError:
        token = token or self.current
        return DslSyntaxError(message, line=self.line, column=token.column)

    def _accept(self, text: str) -> bool:
        if self.current.kind in ("SYM", "ARROW") and self.current.text == text:
            self.index += 1
            return True
        return False

    def _expect(self, text: str) -> Token:
        token = self.current
        if not self._accept(text):
            found = token.text or "fin de texte"
            raise self._error(f"'{text}' attendu, trouve '{found}'", token)
        return token

    def _matching_paren(self, start: int) -> int:
        depth = 0
        for index in range(start, len(self.tokens)):
            token = self.tokens[index]
            if token.kind == "SYM" and token.text == "(":
                depth += 1
            elif token.kind == "SYM" and token.text == ")":
                depth -= 1
                if depth == 0:
                    return index
        raise self._error("parenthese non fermee", self.tokens[start])

    def _is_coefficient_group(self, start: int) -> bool:
        end = self._matching_paren(start)
        inner = self.tokens[start + 1 : end]
        return bool(inner) and all(
            t.kind in _COEFF_KINDS or (t.kind == "SYM" and t.text in _COEFF_SYMBOLS)
            for t in inner
        )

    # -- points d'entree -------------------------------------------------

    def parse_qtype(self, *, stop: str = "EOF") -> QType:
        partials = [self._branch()]
        while self._accept("|"):
            partials.append(self._branch())
        if stop == "EOF" and self.current.kind != "EOF":
            raise self._error(f"symbole inattendu '{self.current.text}'")
        n = self._resolve_n(partials)
        try:
            return QType(tuple(Branch(n, tuple(p.terms), tuple(p.partitions)) for p in partials))
        except AlgebraError as exc:
            raise self._error(str(exc)) from exc

    def _resolve_n(self, partials: list[_Partial]) -> int:
        sizes = {t.n for p in partials for t in p.terms}
        if self.n is not None:
            sizes.add(self.n)
        if len(sizes) > 1:
            raise self._error(f"mots de longueurs differentes : {sorted(sizes)}")
        if sizes:
            return sizes.pop()
        highest = [max(part.qubits) for p in partials for part in p.partitions]
        if not highest:
            raise self._error("type vide")
        return max(highest)

    # -- grammaire -------------------------------------------------------

    def _branch(self) -> _Partial:
        partial = _Partial([], [])
        self._term(partial)
        while self._accept("&"):
            self._term(partial)
        return partial

    def _annotation(self) -> tuple[int, ...]:
        self._expect("@")
        self._expect("{")
        qubits = [self._int()]
        while self._accept(","):
            qubits.append(self._int())
        self._expect("}")
        return tuple(qubits)

    def _term(self, partial: _Partial) -> None:
        token = self.current
        if token.kind == "SYM" and token.text == "(" and not self._is_coefficient_group(self.index):
            end = self._matching_paren(self.index)
            after = self.tokens[end + 1]
            if after.kind == "SYM" and after.text == "@":
                self.index += 1
                inner = self._branch()
                self._expect(")")
                qubits = self._annotation()
                self._add_partition(partial, inner, qubits, token)
                return
        operator = self._sum()
        if self.current.kind == "SYM" and self.current.text == "@":
            qubits = self._annotation()
            self._add_partition(partial, _Partial([operator], []), qubits, token)
            return
        if not operator.is_identity():
            partial.terms.append(operator)

    def _add_partition(
        self, partial: _Partial, inner: _Partial, qubits: tuple[int, ...], token: Token
    ) -> None:
        try:
            local = Branch(
                len(qubits),
                tuple(t for t in inner.terms if not t.is_identity()),
                tuple(inner.partitions),
            )
            partial.partitions.append(Partition(qubits, local))
        except AlgebraError as exc:
            raise self._error(str(exc), token) from exc

    def _sum(self) -> AdditiveOperator:
        negative = False
        if self._accept("-"):
            negative = True
        else:
            self._accept("+")
        total = self._prod()
        if negative:
            total = -total
        while self.current.kind == "SYM" and self.current.text in "+-":
            sign = self.current.text
            self.index += 1
            right = self._prod()
            total = self._combine(total, right if sign == "+" else -right)
        return total

    def _combine(self, left: AdditiveOperator, right: AdditiveOperator) -> AdditiveOperator:
        if left.n != right.n:
            raise self._error(f"mots de longueurs differentes ({left.n} et {right.n})")
        return left + right

    def _prod(self) -> AdditiveOperator:
        token = self.current
        coeff = ONE
        if token.kind in _COEFF_KINDS or (
            token.kind == "SYM" and token.text == "(" and self._is_coefficient_group(self.index)
        ):
            coeff = self._coeff()
        token = self.current
        if token.kind == "WORD":
            self.index += 1
            return AdditiveOperator.from_label(token.text).scale(coeff)
        if token.kind == "SYM" and token.text == "(":
            self.index += 1
            inner = self._sum()
            self._expect(")")
            return inner.scale(coeff)
        raise self._error(f"mot de Pauli attendu, trouve '{token.text or 'fin de texte'}'")

    # -- coefficients ----------------------------------------------------

    def _int(self) -> int:
        token = self.current
        if token.kind != "INT":
            raise self._error(f"entier attendu, trouve '{token.text or 'fin de texte'}'")
        self.index += 1
        return int(token.text)

    def _coeff(self) -> RingCoeff:
        value = self._coeff_factor()
        while self.current.kind == "SYM" and self.current.text in "*/":
            operator = self.current
            self.index += 1
            right = self._coeff_factor()
            if operator.text == "*":
                value = value * right
                continue
            inverse = right.try_inverse()
            if inverse is None:
                raise OutsideRingError(
                    f"ligne {self.line}, colonne {operator.column}: division par {right} "
                    "hors de l'anneau (a + b*rt2)/2^k"
                )
            value = value * inverse
        return value

    def _coeff_factor(self) -> RingCoeff:
        token = self.current
        if token.kind == "INT":
            self.index += 1
            value = RingCoeff.of(int(token.text))
            if self.current.kind == "RT2":
                self.index += 1
                value = value * RingCoeff.sqrt2()
            return value
        if token.kind == "RT2":
            self.index += 1
            return RingCoeff.sqrt2()
        if token.kind == "SYM" and token.text == "(":
            self.index += 1
            value = self._coeff_sum()
            self._expect(")")
            return value
        raise self._error(f"coefficient attendu, trouve '{token.text or 'fin de texte'}'")

    def _coeff_sum(self) -> RingCoeff:
        negative = self._accept("-")
        value = self._coeff()
        if negative:
            value = -value
        while self.current.kind == "SYM" and self.current.text in "+-":
            sign = self.current.text
            self.index += 1
            right = self._coeff()
            value = value + right if sign == "+" else value - right
        return value


def parse_type(text: str, *, n: int | None = None, line: int = 1, column: int = 1) -> QType:
    """Analyse un type ; ``n`` impose le nombre de qubits si fourni.

    Chaque terme additif doit verifier m^2 = I ("X + Y" est refuse). Les
    branches inhabitees sont acceptees ; ``validate_qtype`` les signale.

    Raises:
        DslSyntaxError: Erreur de syntaxe (avec ligne et colonne).
        OutsideRingError: Coefficient hors de l'anneau.
        InvalidAdditiveError: Terme additif dont le carre n'est pas I.
    """
    parsed = TypeParser(text, n=n, line=line, column=column).parse_qtype()
    for branch in parsed.branches:
        for term in branch.all_terms():
            if not is_valid_additive(term):
                square = term.multiply(term)
                raise InvalidAdditiveError(
                    f"ligne {line}, colonne {column}: {term} n'est pas un type additif "
                    f"(son carre vaut {square.re})",
                    witness=square,
                )
    return parsed


def parse_operator(text: str) -> AdditiveOperator:
    """Analyse un terme additif seul, ex. ``(1/rt2)(X + Y)``."""
    parser = TypeParser(text)
    operator = parser._sum()
    if parser.current.kind != "EOF":
        raise parser._error(f"symbole inattendu '{parser.current.text}'")
    return operator


def parse_arrow(text: str, *, n: int | None = None) -> tuple[QType, QType]:
    """Analyse ``A -> B`` ; les deux cotes doivent avoir la meme taille."""
    left, arrow, right = text.partition("->")
    if not arrow:
        raise DslSyntaxError("'->' attendu dans un type fleche", line=1, column=len(text) + 1)
    source = parse_type(left, n=n)
    target = parse_type(right, n=source.n, column=len(left) + 3)
    return source, target


def format_arrow(source: QType, target: QType) -> str:
    return f"{format_qtype(source)} -> {format_qtype(target)}"


__all__ = [
    "TypeParser",
    "format_arrow",
    "format_branch",
    "format_coeff",
    "format_operator",
    "format_qtype",
    "parse_arrow",
    "parse_operator",
    "parse_type",
    "tokenize",
]
