# Dines elimination package
