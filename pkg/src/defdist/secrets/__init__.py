from defdist.secrets.keystore import KeyStore
