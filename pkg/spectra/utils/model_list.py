"""
model_list.py

Typed list of named pydantic models, indexable by position or by `.name`.
Used for the metrics and verdicts of a run report.

Gabriel Braun, 2026
"""

from typing import Generic, Iterator, TypeVar

from pydantic import RootModel, computed_field

T = TypeVar("T")


class ModelList(RootModel[list[T]], Generic[T]):
    """
    List of models that accepts `report.metrics[0]` or `report.metrics["residual"]`.
    """

    def __iter__(self) -> Iterator[T]:
        return iter(self.root)

    def __len__(self) -> int:
        return len(self.root)

    def __contains__(self, item: T | str) -> bool:
        if isinstance(item, str):
            return item in self.names
        return item.name in self.names

    def __getitem__(self, idx: int | str) -> T:
        if isinstance(idx, str):
            for item in self.root:
                if getattr(item, "name", None) == idx:
                    return item
            raise KeyError(f"No entry named '{idx}'.")
        return self.root[idx]

    def append(self, item: T) -> None:
        self.root.append(item)

    @computed_field
    @property
    def names(self) -> list[str]:
        return [item.name for item in self.root]
