"""Exact pi-support and pi-cosupport of modules over elementary abelian group algebras."""

from ._core import (
    AlgebraSpec,
    Module,
    PisuppError,
    cosupport_sample,
    dual,
    direct_sum,
    emit_module_file,
    example,
    free_module,
    hom,
    in_cosupport,
    in_support,
    is_free,
    is_projective,
    jordan_block_module,
    jordan_type,
    klein_spec,
    klein_truncation,
    parse_module_file,
    run_command,
    support_ideal,
    support_sample,
    tensor,
    trivial_module,
    validate,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
