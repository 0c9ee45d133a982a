from __future__ import annotations

from typing import Any, Dict, Tuple, Type, TypeVar

from jax import tree_util

T = TypeVar("T", bound="BaseJaxPytreeDataClass")


class BaseJaxPytreeDataClass:
    """
    Split a `dataclass` into dynamic (array) leaves and static (hashable) metadata
    so that instances can be passed straight into jit-compiled kernels.

    Attributes annotated with an ``Array`` type become pytree children; every other
    attribute is treated as static and takes part in the hash, which triggers JIT
    re-compilation whenever a static value changes (e.g. a different viscosity).

    .. warning::

        Dynamic attributes must be declared before static ones in the dataclass,
        and the child class must be registered with :func:`register_jax_pytree_node`.

    See https://jax.readthedocs.io/en/latest/faq.html#how-to-use-jit-with-methods
    """

    def _tree_flatten(self) -> Tuple[Tuple[Any, ...], Dict[str, Any]]:
        children = tuple(getattr(self, attr) for attr in self._get_jit_dynamic_attributes())
        aux_data = {attr: getattr(self, attr) for attr in self._get_jit_static_attributes()}
        return children, aux_data

    @classmethod
    def _tree_unflatten(cls: Type[T], aux_data: Dict[str, Any], children: Tuple[Any, ...]) -> T:
        return cls(*children, **aux_data)  # type: ignore

    def __hash__(self) -> int:
        """Hash on the static attributes only (JIT cache key)."""
        aux_data: Dict[str, Any] = self._tree_flatten()[1]
        return hash((self.__class__.__name__, tuple(sorted(aux_data.items()))))

    @classmethod
    def _get_jit_dynamic_attributes(cls) -> Tuple[str, ...]:
        return tuple(
            attr for attr, dtype in cls.__annotations__.items() if "Array" in str(dtype)
        )

    @classmethod
    def _get_jit_static_attributes(cls) -> Tuple[str, ...]:
        dynamic_attributes = cls._get_jit_dynamic_attributes()
        return tuple(
            attr for attr in cls.__annotations__.keys() if attr not in dynamic_attributes
        )


def register_jax_pytree_node(cls) -> None:
    """Register the input class as internal JAX pytree node."""
    tree_util.register_pytree_node(
        cls, cls._tree_flatten, cls._tree_unflatten  # type: ignore
    )
