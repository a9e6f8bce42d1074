"""
함수 명세 미니 언어

CLI 와 설정 파일에서 함수를 문자열로 지정합니다.

문법:
    term     := moebius:LAM,A | blaschke:A1,A2,... | S | singular:ANGLE@W,...
              | balpha:ALPHA | outer:C|ANGLE^P|... | id | power:N
    combo    := prod(SPEC,SPEC) | compose(SPEC,SPEC) | deriv(SPEC)
              | quot(SPEC,blaschke:A1,...)

복소수는 Python 표기(0.3+0.4j)를 씁니다. 조합자의 인자는 괄호 밖의 쉼표 중
바로 뒤에 영문자가 오는 위치에서 나뉩니다.

Example:
    >>> parse_function("prod(S,blaschke:0)").label
    'prod(S,blaschke:0)'
"""

import logging
from typing import List

from lab import holo_zoo
from lab.holomap import HoloMap
from models.errors import SpecParseError

logger = logging.getLogger(__name__)

COMBINATORS = ('prod', 'compose', 'deriv', 'quot')


def _complex(text: str) -> complex:
    try:
        return complex(text.strip().replace(' ', ''))
    except ValueError as e:
        raise SpecParseError(f"not a number: {text!r}") from e


def _split_top_level(text: str) -> List[str]:
    """괄호 깊이 0 이고 (공백을 건너뛴) 다음 문자가 영문자인 쉼표에서 분할"""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
            if depth < 0:
                raise SpecParseError(f"unbalanced parentheses in {text!r}")
        elif ch == ',' and depth == 0 and text[i + 1:].lstrip()[:1].isalpha():
            parts.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise SpecParseError(f"unbalanced parentheses in {text!r}")
    parts.append(text[start:])
    return [p.strip() for p in parts]


def _parse_term(text: str) -> HoloMap:
    name, _, body = text.partition(':')
    name = name.strip().lower()

    if name == 's' and not body:
        return holo_zoo.atomic_s()
    if name == 'id' and not body:
        return holo_zoo.identity()
    if name == 'moebius':
        values = [_complex(v) for v in body.split(',')]
        if len(values) != 2:
            raise SpecParseError(f"moebius needs LAM,A: {text!r}")
        return holo_zoo.moebius(values[0], values[1])
    if name == 'blaschke':
        return holo_zoo.blaschke([_complex(v) for v in body.split(',')])
    if name == 'power':
        try:
            return holo_zoo.power(int(body))
        except ValueError as e:
            raise SpecParseError(f"power needs an integer: {text!r}") from e
    if name == 'balpha':
        return holo_zoo.b_alpha(_complex(body))
    if name == 'singular':
        masses = []
        for piece in body.split(','):
            angle, sep, weight = piece.partition('@')
            masses.append((_complex(angle).real, _complex(weight).real if sep else 1.0))
        return holo_zoo.singular_inner(masses)
    if name == 'outer':
        head, *factors = body.split('|')
        pairs = []
        for piece in factors:
            angle, sep, exponent = piece.partition('^')
            if not sep:
                raise SpecParseError(f"outer factor needs ANGLE^P: {piece!r}")
            pairs.append((_complex(angle).real, _complex(exponent).real))
        return holo_zoo.outer_power(_complex(head), pairs)
    raise SpecParseError(f"unknown function term: {text!r}")


def parse_function(text: str) -> HoloMap:
    """
    함수 명세 문자열을 HoloMap 으로 변환

    Args:
        text: 예) "blaschke:0,0", "moebius:1,0.5", "S", "balpha:0.5", "prod(S,blaschke:0)"

    Returns:
        HoloMap: 명세 문자열을 label 로 갖는 함수

    Raises:
        SpecParseError: 문법 오류
        ParamOutOfDomain: 매개변수가 정의역 밖일 때
    """
    text = text.strip()
    if not text:
        raise SpecParseError("empty function spec")

    head, paren, rest = text.partition('(')
    if paren and head.strip().lower() in COMBINATORS:
        if not rest.endswith(')'):
            raise SpecParseError(f"missing closing parenthesis: {text!r}")
        args = _split_top_level(rest[:-1])
        combinator = head.strip().lower()
        if combinator == 'deriv':
            _expect(args, 1, text)
            built = holo_zoo.derivative_map(parse_function(args[0]))
        elif combinator == 'prod':
            _expect(args, 2, text)
            built = holo_zoo.product(parse_function(args[0]), parse_function(args[1]))
        elif combinator == 'compose':
            _expect(args, 2, text)
            built = holo_zoo.compose(parse_function(args[0]), parse_function(args[1]))
        else:
            _expect(args, 2, text)
            zeros_text = args[1].partition(':')
            if zeros_text[0].strip().lower() != 'blaschke':
                raise SpecParseError(f"quot divisor must be blaschke:...: {text!r}")
            zeros = [_complex(v) for v in zeros_text[2].split(',')]
            built = holo_zoo.quotient_blaschke(parse_function(args[0]), zeros)
        return holo_zoo.relabel(built, text, {})

    if paren:
        raise SpecParseError(f"unknown combinator: {head!r}")
    built = _parse_term(text)
    return holo_zoo.relabel(built, text, {})


def _expect(args: List[str], count: int, text: str) -> None:
    if len(args) != count or not all(args):
        raise SpecParseError(f"expected {count} argument(s): {text!r}")
