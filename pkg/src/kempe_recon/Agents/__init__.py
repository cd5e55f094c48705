from .CertificationAgent import CertificationAgent, certify_instance, certify_path

__all__ = ["CertificationAgent", "certify_instance", "certify_path"]
