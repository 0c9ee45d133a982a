from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict


def _strip_comments(data: Any) -> Any:
    """Drop keys starting with an underscore (e.g. ``"_comment"``) at any depth."""
    if isinstance(data, dict):
        return {
            key: _strip_comments(value)
            for key, value in data.items()
            if not str(key).startswith("_")
        }
    if isinstance(data, list):
        return [_strip_comments(item) for item in data]
    return data


class _CFG(BaseModel):
    """A base class for default values as global configuration."""

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    def __getitem__(self, keyword: str) -> Any:
        """Get value for the input name."""
        return getattr(self, keyword)

    def __setitem__(self, name, value) -> None:
        """Set value for the input name"""
        setattr(self, name, value)

    def keywords(self) -> List[str]:
        """Return a list of existing keyword names."""
        return list(self.__dict__.keys())

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    def to_json(self, file: Path) -> None:
        """Dump configuration into a json file."""
        with open(str(Path(file)), "w") as fp:
            json.dump(self.to_dict(), fp, indent=4, sort_keys=True)
            fp.write("\n")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> _CFG:
        """Validate a (possibly commented) dictionary into a configuration instance."""
        return cls.model_validate(_strip_comments(data))

    @classmethod
    def from_json(cls, file: Path) -> _CFG:
        """Create a configuration instance from the input json file."""
        with open(str(Path(file)), "r") as fp:
            kwargs = json.load(fp)
        return cls.from_dict(kwargs)
