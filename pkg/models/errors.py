"""
실험실 예외 계층

모든 수치 모듈이 공유하는 예외 타입을 정의합니다.
워크플로우 노드는 LabError를 잡아서 실패 레코드로 기록합니다.
"""

from typing import Optional


class LabError(Exception):
    """모든 실험실 예외의 기반 클래스"""


class GridTooCoarse(LabError):
    """Poisson 커널 폭이 격자 간격에 비해 너무 좁고 국소 세분화를 쓸 수 없음"""


class NotLogIntegrable(LabError):
    """클램핑된 질량이 허용치를 넘어 log h를 적분할 수 없음"""


class ParamOutOfDomain(LabError):
    """함수족 매개변수나 평가점이 정의역 밖에 있음"""


class ContourTooClose(LabError):
    """Cauchy 적분 경로가 단위원에 닿음"""


class BoundarySingularity(LabError):
    """경계 특이점(singular support) 위에서 경계값을 요구함"""


class UnboundedOnE(LabError):
    """E 위에서 |phi'|의 본질적 상한이 유한하지 않음"""


class Inconclusive(LabError):
    """최대 깊이까지 수렴도 발산도 확인되지 않음"""


class SpecParseError(LabError):
    """함수 명세 문자열을 해석할 수 없음"""


class ConfigError(LabError):
    """설정 파일이 잘못됨"""


class ChainViolation(LabError):
    """
    증명 사슬의 한 고리가 허용오차를 넘어 깨짐

    수학적으로는 사슬이 항상 성립하므로, 이 예외는 구적법이나
    허용오차 정책의 버그를 뜻합니다.

    Attributes:
        link: 처음 실패한 고리 이름
        residual: 해당 고리의 잔차 (음수 = 위반)
    """

    def __init__(self, link: str, residual: float, detail: Optional[str] = None) -> None:
        self.link = link
        self.residual = residual
        message = f"chain link '{link}' violated (residual {residual:.3e})"
        if detail:
            message += f": {detail}"
        super().__init__(message)
