"""Password hashing, session tokens and role-based authorization.

Passwords are hashed with scrypt (memory-hard) into a self-describing
encoded form ``scrypt$N$r$p$salt$hash`` (base64url fields), so parameters
can be raised later without invalidating stored hashes. Verification is
constant-time, and login failure is indistinguishable between unknown users
and wrong passwords.

Session tokens are opaque 256-bit random values persisted in the store's
``sessions`` collection — revocation is a delete, and no signing secret is
involved.
"""

from __future__ import annotations

import base64
import hashlib
import hmac
import secrets
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

from ..errors import Forbidden, InvalidCredentials, NotFound, Unauthenticated
from ..model import Project, Role, User, new_id
from ..store import MemoryStore, QueryFilter

SCRYPT_N = 2**14
SCRYPT_R = 8
SCRYPT_P = 1

# Role -> actions granted. Fixed mapping; "admin" covers member management
# and project deletion.
PERMISSIONS: dict[Role, frozenset[str]] = {
    Role.VIEWER: frozenset({"read"}),
    Role.EDITOR: frozenset({"read", "write"}),
    Role.OWNER: frozenset({"read", "write", "admin"}),
}


def _b64(data: bytes) -> str:
    return base64.urlsafe_b64encode(data).decode("ascii").rstrip("=")


def _unb64(text: str) -> bytes:
    return base64.urlsafe_b64decode(text + "=" * (-len(text) % 4))


def hash_password(password: str, *, n: int | None = None, r: int | None = None,
                  p: int | None = None) -> str:
    n, r, p = n or SCRYPT_N, r or SCRYPT_R, p or SCRYPT_P
    salt = secrets.token_bytes(16)
    digest = hashlib.scrypt(password.encode("utf-8"), salt=salt, n=n, r=r, p=p, dklen=32)
    return f"scrypt${n}${r}${p}${_b64(salt)}${_b64(digest)}"


def verify_password(password: str, encoded: str) -> bool:
    try:
        scheme, n, r, p, salt, expected = encoded.split("$")
        if scheme != "scrypt":
            return False
        digest = hashlib.scrypt(
            password.encode("utf-8"), salt=_unb64(salt),
            n=int(n), r=int(r), p=int(p), dklen=len(_unb64(expected)),
        )
        return hmac.compare_digest(digest, _unb64(expected))
    except (ValueError, TypeError):
        return False


# Verified against when the username is unknown, so the work factor (and the
# response) is identical for unknown-user and wrong-password failures.
_DUMMY_HASH = hash_password("this-password-never-matches")


def _now() -> datetime:
    return datetime.now(timezone.utc)


def _parse_ts(text: str) -> datetime:
    return datetime.strptime(text, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=timezone.utc)


def _format_ts(dt: datetime) -> str:
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass
class SessionToken:
    token: str
    user_id: str
    expires_at: str


class Authenticator:
    def __init__(self, store: MemoryStore, token_ttl_hours: float = 24.0):
        self.store = store
        self.token_ttl_hours = token_ttl_hours

    def find_user(self, username: str) -> tuple[User, str] | None:
        rows, _ = self.store.query(
            "users", QueryFilter(field_equals=[("username", username)], limit=1)
        )
        if not rows:
            return None
        doc, rev = rows[0]
        return User.from_doc(doc, rev=rev), rev

    def create_user(self, username: str, password: str, email: str | None = None) -> User:
        from ..model import USERNAME_RE
        from ..errors import DuplicateValue, InvalidName

        if not USERNAME_RE.match(username):
            raise InvalidName(
                f"username {username!r} must match [a-z0-9_]{{3,32}}"
            )
        if self.find_user(username) is not None:
            raise DuplicateValue(f"username {username!r} is taken")
        user = User(
            id=new_id(),
            username=username,
            password_hash=hash_password(password),
            email=email,
        )
        self.store.put("users", user.to_doc())
        return user

    def login(self, username: str, password: str) -> SessionToken:
        """Constant-time verification; unknown user and wrong password raise
        the identical InvalidCredentials."""
        found = self.find_user(username)
        if found is None:
            verify_password(password, _DUMMY_HASH)
            raise InvalidCredentials("invalid username or password")
        user, _ = found
        if not verify_password(password, user.password_hash):
            raise InvalidCredentials("invalid username or password")
        token = SessionToken(
            token=secrets.token_urlsafe(32),
            user_id=user.id,
            expires_at=_format_ts(_now() + timedelta(hours=self.token_ttl_hours)),
        )
        self.store.put("sessions", {
            "id": new_id(),
            "token": token.token,
            "user_id": token.user_id,
            "expires_at": token.expires_at,
        })
        return token

    def logout(self, token: str) -> None:
        rows, _ = self.store.query(
            "sessions", QueryFilter(field_equals=[("token", token)], limit=1)
        )
        if rows:
            doc, rev = rows[0]
            self.store.delete("sessions", doc["id"], rev)

    def resolve(self, token: str | None) -> str:
        """Token -> user id; expired, revoked or absent tokens raise
        Unauthenticated."""
        if not token:
            raise Unauthenticated("missing bearer token")
        rows, _ = self.store.query(
            "sessions", QueryFilter(field_equals=[("token", token)], limit=1)
        )
        if not rows:
            raise Unauthenticated("unknown or revoked token")
        doc, _ = rows[0]
        if _parse_ts(doc["expires_at"]) <= _now():
            raise Unauthenticated("token expired")
        return doc["user_id"]

    def authorize(self, token: str | None, project_id: str, action: str) -> str:
        """Resolve the token and check the member role grants ``action``.
        401 for bad tokens, 403 for non-members or insufficient roles."""
        user_id = self.resolve(token)
        try:
            doc, _ = self.store.get("projects", project_id)
        except NotFound:
            raise NotFound(f"project {project_id} not found")
        project = Project.from_doc(doc)
        role = project.members.get(user_id)
        if role is None:
            raise Forbidden("not a member of this project")
        if action not in PERMISSIONS[role]:
            raise Forbidden(f"role {role.value!r} does not grant {action!r}")
        return user_id
