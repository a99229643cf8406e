# Neumann system package
