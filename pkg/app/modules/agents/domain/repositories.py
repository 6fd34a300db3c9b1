"""Agents domain repository interfaces."""

from abc import ABC, abstractmethod

from app.modules.agents.domain.entities import QTable


class QTableRepository(ABC):
    """Repository interface for Q-table snapshots."""

    @abstractmethod
    def save(self, agent_id: int, qtable: QTable) -> None:
        """Persist a snapshot of an agent's Q-table."""
        pass

    @abstractmethod
    def load(self, agent_id: int) -> QTable:
        """Load a previously saved snapshot."""
        pass
