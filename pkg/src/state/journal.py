"""Journal partage des analyses : messages, etape courante et diagnostics."""

from __future__ import annotations

import time
from dataclasses import dataclass
from threading import Lock
from typing import Any, Callable

# Type pour les fonctions de rapport/log
Reporter = Callable[[str], None]

# Constantes
STEP_PREFIX = "[STEP] "
STEP_PREFIX_LENGTH = 7
DIAGNOSTIC_PREFIXES = ("[AVERTISSEMENT]", "[ERREUR]")


@dataclass
class JournalSnapshot:
    """Photographie immuable du journal.

    Attributes:
        messages: Ensemble des messages deja emis.
        completed: Indique si l'analyse est terminee.
        success: Indique si l'analyse a reussi.
        current_step: Libelle de l'etape en cours.
        finished_at: Timestamp UNIX de fin, si disponible.
    """

    messages: list[str]
    completed: bool
    success: bool
    current_step: str | None
    finished_at: float | None

    @property
    def diagnostics(self) -> list[str]:
        return [m for m in self.messages if m.startswith(DIAGNOSTIC_PREFIXES)]


class AnalysisJournal:
    """Conteneur thread-safe pour centraliser la progression d'une analyse."""

    def __init__(self) -> None:
        self._lock = Lock()
        self._messages: list[str] = []
        self._completed = False
        self._success = False
        self._current_step: str | None = None
        self._finished_at: float | None = None

    def reset(self) -> None:
        """Vide le journal avant une nouvelle analyse."""
        with self._lock:
            self._messages.clear()
            self._completed = False
            self._success = False
            self._current_step = None
            self._finished_at = None

    def log(self, message: str) -> None:
        """Ajoute un message au journal et met a jour l'etape si besoin.

        Args:
            message: Texte deja formatte (peut commencer par [STEP]).
        """
        with self._lock:
            if message.startswith(STEP_PREFIX):
                self._current_step = message[STEP_PREFIX_LENGTH:].strip() or None
            self._messages.append(message)

    def set_step(self, step: str) -> None:
        with self._lock:
            self._current_step = step
            self._messages.append(f"{STEP_PREFIX}{step}")

    def mark_complete(self, *, success: bool) -> None:
        """Marque la fin de l'analyse et stocke le resultat."""
        with self._lock:
            self._completed = True
            self._success = success
            self._current_step = "Analyse terminee" if success else "Analyse echouee"
            self._finished_at = time.time()

    def reporter(self, echo: Reporter | None = None) -> Reporter:
        """Fonction de rapport qui journalise puis relaie eventuellement le message."""

        def report(message: str) -> None:
            self.log(message)
            if echo is not None:
                echo(message)

        return report

    def snapshot(self) -> JournalSnapshot:
        with self._lock:
            return JournalSnapshot(
                messages=list(self._messages),
                completed=self._completed,
                success=self._success,
                current_step=self._current_step,
                finished_at=self._finished_at,
            )

    def to_dict(self) -> dict[str, Any]:
        """Expose l'etat courant sous forme de dictionnaire serialisable."""
        snap = self.snapshot()
        return {
            "messages": snap.messages,
            "completed": snap.completed,
            "success": snap.success,
            "current_step": snap.current_step,
            "finished_at": snap.finished_at,
            "diagnostics": snap.diagnostics,
        }


# Instance globale partagee
journal = AnalysisJournal()
