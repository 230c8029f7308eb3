from pydantic import BaseModel, Field
from typing import Optional, List, Dict, Any

# Los números racionales viajan como texto "p/q" para que la salida JSON sea exacta


class ReportEnvelope(BaseModel):
    """Esquema común de toda salida de la línea de comandos"""
    command: str = Field(..., description="Comando ejecutado")
    input: Dict[str, Any] = Field(..., description="Argumentos de entrada normalizados")
    order_spec: Optional[str] = Field(None, description="Orden de monomios usado")
    bounds: Optional[Dict[str, Any]] = Field(None, description="Cotas de aridad y peso de la base de Gröbner")
    result: Any = Field(..., description="Resultado del comando")
    provenance: Dict[str, Any] = Field(default_factory=dict, description="Regiones completadas que respaldan el resultado")


class DimsReport(BaseModel):
    """Esquema para dimensiones por aridad"""
    name: str = Field(..., description="Nombre de la presentación")
    max_arity: int = Field(..., description="Aridad máxima calculada")
    method: str = Field(..., description="Método de cálculo (buchberger, span)")
    dims: List[int] = Field(..., description="Dimensiones en aridades 1..max_arity")
    known: Optional[Dict[int, int]] = Field(None, description="Tabla conocida, si existe")
    matches_known: Optional[bool] = Field(None, description="Coincidencia con la tabla conocida")


class GroebnerReport(BaseModel):
    """Esquema para una base de Gröbner acotada"""
    name: str = Field(..., description="Nombre de la presentación")
    basis_size: int = Field(..., description="Número de elementos de la base")
    quadratic: bool = Field(..., description="Todos los elementos tienen peso 2")
    offending_weights: List[int] = Field(default_factory=list, description="Pesos de los elementos no cuadráticos")
    vanishes_from_weight: Optional[int] = Field(None, description="Peso a partir del cual el operad se anula")
    relations: Optional[List[str]] = Field(None, description="Elementos de la base en forma de texto, ordenados")


class NormalFormReport(BaseModel):
    """Esquema para la forma normal de un polinomio"""
    name: str = Field(..., description="Nombre de la presentación")
    input: str = Field(..., description="Polinomio de entrada")
    normal_form: str = Field(..., description="Forma normal respecto de la base")
    is_zero: bool = Field(..., description="El polinomio pertenece al ideal")


class VeroneseDimsReport(BaseModel):
    """Esquema para dimensiones de potencias de Veronese"""
    name: str = Field(..., description="Nombre de la presentación")
    d: int = Field(..., description="Peso de la potencia")
    mode: str = Field(..., description="naive o generated")
    dims: List[int] = Field(..., description="Dimensiones por aridad")


class VeroneseRelationsReport(BaseModel):
    """Esquema para la presentación cuadrática de una potencia de Veronese"""
    name: str = Field(..., description="Nombre de la presentación resultante")
    d: int = Field(..., description="Peso de la potencia")
    generators: Dict[str, str] = Field(..., description="Generador nuevo -> monomio normal que representa")
    relations: List[str] = Field(..., description="Relaciones cuadráticas")


class QuadraticityReport(BaseModel):
    """Esquema para el análisis de relaciones mínimas por peso"""
    name: str = Field(..., description="Nombre de la presentación")
    d: int = Field(..., description="Peso de la potencia")
    quadratic: bool = Field(..., description="No hay relaciones mínimas de peso mayor que 2")
    layers: List[Dict[str, int]] = Field(..., description="Peso, aridad, núcleo, parte generada y nuevas relaciones")
    minimal_relations: List[str] = Field(default_factory=list, description="Relaciones mínimas de peso mayor que 2")


class PbwReport(BaseModel):
    """Esquema para el criterio PBW de potencias de Veronese"""
    quadratic_gb: bool = Field(..., description="La base de Gröbner es cuadrática")
    monomials_checked: int = Field(..., description="Monomios normales examinados")
    failures: List[str] = Field(default_factory=list, description="Monomios que no son productos de generadores")
    passed: bool = Field(..., description="El criterio se cumple")


class LeftCombReport(BaseModel):
    """Esquema para la generación por peines izquierdos"""
    ranks: List[int] = Field(..., description="Rango de las órbitas de peines izquierdos por aridad")
    dims: List[int] = Field(..., description="Dimensiones por aridad")
    spans: bool = Field(..., description="Los peines izquierdos generan cada componente")


class DualReport(BaseModel):
    """Esquema para un dual de Koszul"""
    name: str = Field(..., description="Nombre del dual")
    source: str = Field(..., description="Presentación de partida")
    pairing: str = Field(..., description="Convención de signos del emparejamiento")
    generators: List[str] = Field(..., description="Generadores del dual")
    relations: List[str] = Field(..., description="Relaciones del dual")
    dims: Optional[List[int]] = Field(None, description="Dimensiones del dual, si se pidieron")


class HomologySliceReport(BaseModel):
    """Esquema para un grado del complejo cobar"""
    degree: int = Field(..., description="Grado de sizigia")
    chains: int = Field(..., description="Dimensión del espacio de cadenas")
    rank_out: int = Field(..., description="Rango de la diferencial que sale de este grado")
    homology: int = Field(..., description="Dimensión de la homología")

    class Config:
        from_attributes = True


class HomologyReport(BaseModel):
    """Esquema para la homología del cobar en una aridad"""
    name: str = Field(..., description="Nombre de la presentación")
    arity: int = Field(..., description="Aridad")
    bound: int = Field(..., description="Cota de aridad de las tablas")
    nilpotent: bool = Field(..., description="El operad se anula fuera de la cota")
    slices: List[HomologySliceReport] = Field(..., description="Homología por grado")
    euler_chains: int = Field(..., description="Suma alternada de dimensiones de cadenas")
    euler_homology: int = Field(..., description="Suma alternada de homologías")
    square_defects: int = Field(..., description="Columnas con diferencial al cuadrado no nula")


class BoundaryReport(BaseModel):
    """Esquema para la resolución de un borde"""
    arity: int = Field(..., description="Aridad")
    degree: int = Field(..., description="Grado de la preimagen")
    solvable: bool = Field(..., description="El objetivo es un borde")
    zero_coefficients: int = Field(..., description="Coeficientes nulos de la solución")
    all_nonzero: bool = Field(..., description="La solución tiene todos los coeficientes no nulos")
    attempts: int = Field(..., description="Intentos de perturbación aleatoria")
    kernel_dim: int = Field(..., description="Dimensión del núcleo usado para perturbar")


class PureCycleReport(BaseModel):
    """Esquema para el certificado del ciclo puro"""
    n: int = Field(..., description="Aridad del generador")
    arity: int = Field(..., description="Aridad del ciclo")
    labels: Dict[str, str] = Field(..., description="Etiqueta del cobar -> monomio normal")
    nu_terms: int = Field(..., description="Términos de la preimagen")
    nu_zero_coefficients: int = Field(..., description="Coeficientes nulos de la preimagen")
    nu_all_nonzero: bool = Field(..., description="La preimagen no tiene coeficientes nulos")
    witness_attempts: int = Field(..., description="Intentos de búsqueda del testigo")
    is_cycle: bool = Field(..., description="El elemento es un ciclo")
    method: str = Field(..., description="rank o witness")
    non_bounding: bool = Field(..., description="El ciclo no es un borde")
    omega: str = Field(..., description="Árbol testigo")
    omega_in_alpha: str = Field(..., description="Coeficiente del testigo en alfa")
    omega_in_beta: str = Field(..., description="Coeficiente del testigo en beta")
    image_rank: Optional[int] = Field(None, description="Rango de la imagen")
    augmented_rank: Optional[int] = Field(None, description="Rango de la imagen ampliada con el ciclo")
    witness_valid: Optional[bool] = Field(None, description="Ningún borde contiene el testigo")
    certified: bool = Field(..., description="Certificado completo")


class SeriesReport(BaseModel):
    """Esquema para una serie truncada"""
    order: int = Field(..., description="Orden de truncamiento")
    input: str = Field(..., description="Serie de entrada")
    output: str = Field(..., description="Serie resultante")
    first_negative: Optional[int] = Field(None, description="Primer coeficiente negativo de la salida")


class PositivityReport(BaseModel):
    """Esquema para la búsqueda de coeficientes negativos"""
    name: str = Field(..., description="Nombre de la presentación o de la serie")
    order: int = Field(..., description="Orden de truncamiento")
    series: str = Field(..., description="Serie con signos por número de vértices")
    first_negative: str = Field(..., description="Índice del primer coeficiente negativo o none")


class GKReport(BaseModel):
    """Esquema para la prueba de Ginzburg-Kapranov"""
    name: str = Field(..., description="Nombre de la presentación")
    order: int = Field(..., description="Orden de truncamiento")
    dims: List[int] = Field(..., description="Dimensiones de la presentación")
    dual_dims: List[int] = Field(..., description="Dimensiones del dual cuadrático")
    predicted_dual_dims: List[str] = Field(..., description="Dimensiones predichas por la inversa")
    inverse_holds: bool = Field(..., description="Las dos series son inversas")
    first_negative: Optional[int] = Field(None, description="Primer coeficiente negativo de la inversa")
    verdict: str = Field(..., description="Veredicto de la prueba")


class RecurrenceReport(BaseModel):
    """Esquema para la verificación de la recurrencia de tres términos"""
    first: int = Field(..., description="Primer índice comprobado")
    last: int = Field(..., description="Último índice comprobado")
    polynomials: List[List[int]] = Field(..., description="Coeficientes de s0, s1, s2 en potencias crecientes")
    alternating_sum: List[int] = Field(..., description="Coeficientes de s0 - s1 + s2")
    a_violations: List[int] = Field(..., description="Índices donde falla para a_n")
    b_violations: List[int] = Field(..., description="Índices donde falla para b_n")
    lagrange_agreement: int = Field(..., description="Índices donde la fórmula cerrada coincide con la inversión")
    holds: bool = Field(..., description="La recurrencia se cumple en todo el rango")


class AsymptoticsReport(BaseModel):
    """Esquema para las asintóticas de a_n y b_n"""
    order: int = Field(..., description="Último índice")
    characteristic: List[int] = Field(..., description="Polinomio característico")
    roots_exact: List[str] = Field(..., description="Raíces exactas")
    roots: List[float] = Field(..., description="Raíces aproximadas")
    radius_exact: str = Field(..., description="Radio de convergencia exacto")
    radius: float = Field(..., description="Radio de convergencia")
    radius_inverse_is_root: bool = Field(..., description="El inverso del radio es raíz")
    a_ratio: float = Field(..., description="Límite extrapolado de a_n / a_(n-1)")
    b_ratio: float = Field(..., description="Límite extrapolado de b_n / b_(n-1)")
    a_ratio_raw: float = Field(..., description="a_N / a_(N-1)")
    b_ratio_raw: float = Field(..., description="b_N / b_(N-1)")
    limit_ratio: float = Field(..., description="Raíz menor")
    a_over_b_decreasing: bool = Field(..., description="a_n / b_n estrictamente decreciente")
    b_ratio_at_least_one: bool = Field(..., description="b_n / b_(n-1) >= 1")
    first_difference: str = Field(..., description="a_1/b_1 - a_0/b_0")
    alternating_sum: List[int] = Field(..., description="Coeficientes de s0 - s1 + s2")
    recurrence_holds: bool = Field(..., description="a_n cumple la recurrencia")


class SuiteCheck(BaseModel):
    """Esquema para un criterio de la batería de reproducción"""
    name: str = Field(..., description="Identificador del criterio")
    passed: bool = Field(..., description="El criterio se cumple")
    detail: str = Field("", description="Valores observados")
    seconds: Optional[float] = Field(None, description="Tiempo de ejecución, solo con --timings")
    bounded: bool = Field(True, description="Evidencia acotada, no un teorema general")


class SuiteReport(BaseModel):
    """Esquema para la batería completa"""
    checks: List[SuiteCheck] = Field(..., description="Criterios ejecutados")
    passed: int = Field(..., description="Criterios superados")
    failed: int = Field(..., description="Criterios fallidos")
