"""
Line-oriented presentation files (.oprd).

    # comment
    operad lie
    kind symmetric
    order rpdl declared
    generator b arity 2 degree 0 action sign(-1)
    relation b(b(1,2),3) + b(b(2,3),1) + b(b(3,1),2)
    meta family lie

``weight <w>`` may follow the degree; ``action table s1:y:+1 s2:x:-1`` gives a
monomial action generator by generator.
"""
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from operadkit.core.opoly import OperadPolynomial, Presentation, SymmetricAction, parse_polynomial
from operadkit.core.orders import GENERATOR_ORDERS, VARIANTS
from operadkit.core.tree import GeneratorSymbol, Kind
from operadkit.errors import ActionError, ParseError, TreeError
from operadkit.utils.logger import setup_logger

logger = setup_logger("fileformat")

FILE_EXTENSION = ".oprd"
KINDS = {k.value: k for k in Kind}


def _int(token: str, what: str, line: int, column: int) -> int:
    if not token.lstrip("-").isdigit():
        raise ParseError(f"Expected an integer {what}, got '{token}'", line, column)
    return int(token)


def _columns(raw: str) -> List[Tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns."""
    out = []
    pos = 0
    for token in raw.split():
        pos = raw.index(token, pos)
        out.append((token, pos + 1))
        pos += len(token)
    return out


def _parse_action(gen: GeneratorSymbol, tokens: List[Tuple[str, int]], line: int) -> SymmetricAction:
    if not tokens:
        raise ParseError("Expected an action after 'action'", line)
    head, column = tokens[0]
    try:
        if head in ("sign(+1)", "sign(1)"):
            return SymmetricAction.sign_character(gen, 1)
        if head == "sign(-1)":
            return SymmetricAction.sign_character(gen, -1)
        if head == "table":
            entries: Dict[int, Tuple[str, int]] = {}
            for token, col in tokens[1:]:
                parts = token.split(":")
                if len(parts) != 3 or not parts[0].startswith("s") or not parts[0][1:].isdigit():
                    raise ParseError(f"Invalid action entry '{token}', expected s<j>:<generator>:<sign>", line, col)
                sign = _int(parts[2].lstrip("+"), "sign", line, col)
                entries[int(parts[0][1:])] = (parts[1], sign)
            return SymmetricAction.table(gen, entries)
    except ActionError as exc:
        raise ActionError(f"line {line}: {exc}") from exc
    raise ParseError(f"Unknown action '{head}'", line, column)


def _parse_generator(tokens: List[Tuple[str, int]], line: int) -> Tuple[GeneratorSymbol, Optional[List]]:
    if len(tokens) < 6 or tokens[2][0] != "arity" or tokens[4][0] != "degree":
        raise ParseError("Expected 'generator <id> arity <k> degree <0|1>'", line, tokens[0][1])
    gid = tokens[1][0]
    arity = _int(tokens[3][0], "arity", line, tokens[3][1])
    degree = _int(tokens[5][0], "degree", line, tokens[5][1])
    if degree not in (0, 1):
        raise ParseError(f"Degree must be 0 or 1, got {degree}", line, tokens[5][1])
    rest = tokens[6:]
    weight = 1
    if rest and rest[0][0] == "weight":
        if len(rest) < 2:
            raise ParseError("Expected a weight after 'weight'", line, rest[0][1])
        weight = _int(rest[1][0], "weight", line, rest[1][1])
        rest = rest[2:]
    action_tokens = None
    if rest:
        if rest[0][0] != "action":
            raise ParseError(f"Unexpected '{rest[0][0]}'", line, rest[0][1])
        action_tokens = rest[1:]
    try:
        gen = GeneratorSymbol(gid, arity, degree, weight)
    except TreeError as exc:
        raise ParseError(str(exc), line, tokens[1][1]) from exc
    return gen, action_tokens


def parse_presentation(text: str) -> Presentation:
    """
    Parse a presentation file.

    Args:
        text: file contents

    Returns:
        The validated presentation

    Raises:
        ParseError: syntax errors and unknown generators, with line and column
        InhomogeneousRelationError: for a relation mixing arities, weights or parities
        ActionError: for invalid symmetric group actions
    """
    name: Optional[str] = None
    kind: Optional[Kind] = None
    order: Optional[str] = None
    generator_order = "declared"
    generators: List[GeneratorSymbol] = []
    pending_actions: List[Tuple[GeneratorSymbol, List, int]] = []
    relation_lines: List[Tuple[str, int, int]] = []
    metadata: Dict[str, str] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].rstrip()
        if not stripped.strip():
            continue
        tokens = _columns(stripped)
        keyword, column = tokens[0]
        if keyword == "operad":
            if len(tokens) != 2:
                raise ParseError("Expected 'operad <name>'", number, column)
            name = tokens[1][0]
        elif keyword == "kind":
            if len(tokens) != 2 or tokens[1][0] not in KINDS:
                raise ParseError(f"Expected 'kind {'|'.join(KINDS)}'", number, column)
            kind = KINDS[tokens[1][0]]
        elif keyword == "order":
            if len(tokens) not in (2, 3) or tokens[1][0] not in VARIANTS:
                raise ParseError(f"Expected 'order {'|'.join(VARIANTS)} [{'|'.join(GENERATOR_ORDERS)}]'", number, column)
            order = tokens[1][0]
            if len(tokens) == 3:
                if tokens[2][0] not in GENERATOR_ORDERS:
                    raise ParseError(f"Unknown generator order '{tokens[2][0]}'", number, tokens[2][1])
                generator_order = tokens[2][0]
        elif keyword == "generator":
            gen, action_tokens = _parse_generator(tokens, number)
            if any(g.id == gen.id for g in generators):
                raise ParseError(f"Duplicate generator '{gen.id}'", number, tokens[1][1])
            generators.append(gen)
            if action_tokens is not None:
                pending_actions.append((gen, action_tokens, number))
        elif keyword == "relation":
            offset = stripped.index("relation") + len("relation")
            relation_lines.append((stripped[offset:], number, offset + 1))
        elif keyword == "meta":
            if len(tokens) < 3:
                raise ParseError("Expected 'meta <key> <value>'", number, column)
            metadata[tokens[1][0]] = stripped[tokens[2][1] - 1:].strip()
        else:
            raise ParseError(f"Unknown directive '{keyword}'", number, column)

    if name is None:
        raise ParseError("Missing 'operad <name>' line")
    if kind is None:
        raise ParseError("Missing 'kind' line")
    generator_map = {g.id: g for g in generators}
    actions = {gen.id: _parse_action(gen, tokens, number) for gen, tokens, number in pending_actions}
    relations: List[OperadPolynomial] = [
        parse_polynomial(body, generator_map, kind, number, column) for body, number, column in relation_lines
    ]
    P = Presentation(name, kind, generators, relations, actions, order, generator_order, metadata)
    return P.validate()


def load_presentation(path: Union[str, Path]) -> Presentation:
    """Read and parse a presentation file."""
    path = Path(path)
    P = parse_presentation(path.read_text(encoding="utf-8"))
    logger.debug(f"Loaded {P.name} from {path}")
    return P


def serialize_presentation(P: Presentation) -> str:
    """Presentation file text; parse_presentation(serialize_presentation(P)) reproduces P."""
    lines = [f"operad {P.name}", f"kind {P.kind.value}"]
    if P.order is not None:
        lines.append(f"order {P.order} {P.generator_order}")
    for g in P.generators:
        line = f"generator {g.id} arity {g.arity} degree {g.parity}"
        if g.weight != 1:
            line += f" weight {g.weight}"
        if g.id in P.actions:
            line += f" action {P.actions[g.id].describe()}"
        lines.append(line)
    order = P.order_spec()
    for rel in P.relations:
        if rel:
            lines.append(f"relation {rel.to_text(order)}")
    for key in sorted(P.metadata):
        lines.append(f"meta {key} {P.metadata[key]}")
    return "\n".join(lines) + "\n"
