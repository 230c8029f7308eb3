# Importaciones para facilitar el acceso a los esquemas de informes
from operadkit.schemas.reports import (
    ReportEnvelope, DimsReport, GroebnerReport, NormalFormReport,
    VeroneseDimsReport, VeroneseRelationsReport, QuadraticityReport, PbwReport, LeftCombReport,
    DualReport, HomologySliceReport, HomologyReport, BoundaryReport, PureCycleReport,
    SeriesReport, PositivityReport, GKReport, RecurrenceReport, AsymptoticsReport,
    SuiteCheck, SuiteReport,
)

__all__ = [
    'ReportEnvelope', 'DimsReport', 'GroebnerReport', 'NormalFormReport',
    'VeroneseDimsReport', 'VeroneseRelationsReport', 'QuadraticityReport', 'PbwReport', 'LeftCombReport',
    'DualReport', 'HomologySliceReport', 'HomologyReport', 'BoundaryReport', 'PureCycleReport',
    'SeriesReport', 'PositivityReport', 'GKReport', 'RecurrenceReport', 'AsymptoticsReport',
    'SuiteCheck', 'SuiteReport',
]
