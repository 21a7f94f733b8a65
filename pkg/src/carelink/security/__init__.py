from .a5 import (
    A5_1,
    CipherSuite,
    FrameNumberOverflow,
    KEYSTREAM_BITS_PER_FRAME,
    UnknownCipher,
    a5_keystream,
    cipher_registry,
    majority,
)
from .auth import (
    SubscriberKey,
    derive_session_key,
    derive_sres,
    load_subscriber_keys,
    verify_sres,
)
from .channel import (
    AuthenticationFailed,
    KeystreamTooShort,
    NoCommonCipher,
    SecureChannel,
    apply_keystream,
    negotiate_cipher,
)

__all__ = [
    "A5_1",
    "AuthenticationFailed",
    "CipherSuite",
    "FrameNumberOverflow",
    "KEYSTREAM_BITS_PER_FRAME",
    "KeystreamTooShort",
    "NoCommonCipher",
    "SecureChannel",
    "SubscriberKey",
    "UnknownCipher",
    "a5_keystream",
    "apply_keystream",
    "cipher_registry",
    "derive_session_key",
    "derive_sres",
    "load_subscriber_keys",
    "majority",
    "negotiate_cipher",
    "verify_sres",
]
