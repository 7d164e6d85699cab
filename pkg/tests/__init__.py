"""Package de tests unitaires pour l'application Projet_Python_E4S3."""
